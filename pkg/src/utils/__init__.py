"""Utils package for badapt."""
