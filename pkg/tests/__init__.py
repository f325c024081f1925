"""
mbgg tests
"""
