"""
配置模組
"""
