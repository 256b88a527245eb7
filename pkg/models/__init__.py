"""
資料模型模組
"""