"""
API Routes package
"""
