# 核心计算模块：Fock 空间、模作用、分次线性代数与根