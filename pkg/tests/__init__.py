"""alpha-lueroth test suite."""
