"""
Integration tests initialization.
"""
