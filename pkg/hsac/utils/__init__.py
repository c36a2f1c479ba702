"""
Utility modules for the HSAC testbed.
"""
