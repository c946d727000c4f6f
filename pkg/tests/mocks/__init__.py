"""Google resource HTTP response mocks."""
