"""
服務模組
"""