"""
工具模組
"""