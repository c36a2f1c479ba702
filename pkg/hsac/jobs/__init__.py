"""
Job-related classes for the HSAC harness.

This module contains job types, enums, and management classes.
"""
