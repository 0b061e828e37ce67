"""
工具模块：辫子词与约化数据文件解析
"""
