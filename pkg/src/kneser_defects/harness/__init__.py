"""Verification harness: claims, reports, the command line and the report board."""
