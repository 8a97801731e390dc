"""
HochschildBench Tests
"""
