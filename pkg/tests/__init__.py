"""
Test suite for holomatch.
"""

