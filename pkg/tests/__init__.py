"""
Test package for the HSAC testbed.
"""
