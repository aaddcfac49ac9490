"""
Test suite for psik
"""
