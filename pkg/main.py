#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Heisenberg 顶点算子代数结构计算工具
主程序入口
"""

import sys


def check_dependencies():
    """检查依赖包"""
    try:
        import click  # noqa: F401
        import colorama  # noqa: F401
        from cryptography.hazmat.primitives import hashes  # noqa: F401
        return True
    except ImportError:
        print("❌ 缺少依赖包，请运行：pip install -r requirements.txt")
        return False


def main():
    """主函数"""
    # 检查依赖
    if not check_dependencies():
        sys.exit(2)

    from cli.commands import cli
    cli(obj={})


if __name__ == '__main__':
    main()
