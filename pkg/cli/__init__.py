"""
命令列介面模組
"""
