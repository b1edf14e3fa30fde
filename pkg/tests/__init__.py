"""T(m,n) toolkit - Test Suite."""
