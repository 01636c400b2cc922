"""Property suites run by ``alpha-lueroth verify``."""

from lueroth.verification.suites import SUITE_NAMES, PropertySuites, SuiteResult, run_suite

__all__ = ["SUITE_NAMES", "PropertySuites", "SuiteResult", "run_suite"]
