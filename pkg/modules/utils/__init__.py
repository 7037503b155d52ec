"""
Utility Functions
通用工具函数
"""
