"""
Unit tests initialization.
"""
