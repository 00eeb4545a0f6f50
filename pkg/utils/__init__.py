# 工具模块：解析、报告、配置、随机数与文件处理