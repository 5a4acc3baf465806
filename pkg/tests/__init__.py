"""costarnet tests."""
