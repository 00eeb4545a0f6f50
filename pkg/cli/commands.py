#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口
负责参数解析、代数装配、子命令分派与报告输出
"""

import functools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import click

from cli import console
from core.errors import ConfigError, NotInRadicalError, VOAError
from core.fock import BosonAlgebra, State, dimension, identity_algebra
from core.linalg import semi_primary_decompose
from core.modes import ModeEngine
from core.radical import RadicalAnalyzer
from core.verifier import SUITES, Verifier
from utils.config import AppConfig, load_config
from utils.file_handler import FileHandler
from utils.report import build_report, compute_digest, render_json, render_text, to_jsonable
from utils.state_parser import (
    DegreeQuery, Expression, StateLiteral, VirasoroApply, ZeroModeApply,
    parse_expression, parse_state,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass
class Session:
    """一次命令调用的装配结果"""

    config: AppConfig
    algebra: BosonAlgebra
    engine: ModeEngine
    analyzer: RadicalAnalyzer
    max_weight: int
    output_format: str
    output_path: Optional[str]


def common_options(func):
    """每个子命令共用的选项"""
    options = [
        click.option('--algebra', 'algebra_file', type=click.Path(dir_okay=False), default=None,
                     help='代数定义文件（rank = r 与 gram = [[...]]）'),
        click.option('--rank', type=click.IntRange(min=1), default=None,
                     help='秩 r，使用单位 Gram 矩阵'),
        click.option('--max-weight', type=click.IntRange(min=0), default=None,
                     help='截断权重 N'),
        click.option('--format', 'output_format', type=click.Choice(['text', 'json']),
                     default=None, help='输出格式'),
        click.option('--log-level', default=None, help='日志级别'),
        click.option('--output', 'output_path', type=click.Path(dir_okay=False), default=None,
                     help='同时把 JSON 报告写入文件'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def handle_errors(func):
    """把引擎异常转换为退出码 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except VOAError as exc:
            console.failure(str(exc))
            ctx.exit(EXIT_USAGE)

    return wrapper


def open_session(ctx: click.Context, algebra_file: Optional[str], rank: Optional[int],
                 max_weight: Optional[int], output_format: Optional[str],
                 log_level: Optional[str], output_path: Optional[str]) -> Session:
    """
    装配代数、引擎与分析器

    Args:
        ctx: click 上下文，obj 中保存配置
        algebra_file: 代数文件
        rank: 单位 Gram 的秩
        max_weight: 截断权重
        output_format: 输出格式
        log_level: 日志级别
        output_path: 报告文件

    Returns:
        Session: 装配结果
    """
    config: AppConfig = ctx.obj['config']
    level = (log_level or config.log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise click.BadParameter(f"未知的日志级别 {log_level!r}", param_hint='--log-level')
    console.setup_console(level, config.color)

    if algebra_file is not None:
        algebra = FileHandler().load_algebra(algebra_file)
        if rank is not None and rank != algebra.rank:
            raise click.UsageError(
                f"--rank {rank} 与 {algebra_file} 中的秩 {algebra.rank} 不一致"
            )
    else:
        algebra = identity_algebra(rank if rank is not None else config.rank)

    bound = max_weight if max_weight is not None else config.truncation_for(algebra.rank)
    engine = ModeEngine(algebra, memoize=config.memoize)
    logger.debug("session: rank %d, truncation %d", algebra.rank, bound)
    return Session(
        config=config,
        algebra=algebra,
        engine=engine,
        analyzer=RadicalAnalyzer(engine, bound),
        max_weight=bound,
        output_format=output_format or config.output_format,
        output_path=output_path,
    )


def emit(session: Session, report: Dict, headline: str, ok: bool = True) -> None:
    """输出报告并以对应退出码结束"""
    if session.output_path:
        FileHandler().save_report(report, session.output_path)
    if session.output_format == 'json':
        click.echo(render_json(report))
    else:
        (console.success if ok else console.failure)(headline)
        console.plain(render_text(report))
    click.get_current_context().exit(EXIT_OK if ok else EXIT_FAILED)


def _report(session: Session, command: str, inputs: Dict, result: Any,
            certificate: Any = None, seed: Optional[int] = None) -> Dict:
    seed = session.config.seed if seed is None else seed
    return build_report(command, session.algebra, inputs, result, certificate, seed)


def evaluate_expression(expression: Expression, session: Session) -> Union[State, int]:
    """
    求值 L(n)、o(...)、deg(...) 包装的表达式

    Args:
        expression: 语法树
        session: 当前会话

    Returns:
        Union[State, int]: 态，或 deg(...) 的次数
    """
    if isinstance(expression, StateLiteral):
        return expression.state
    if isinstance(expression, VirasoroApply):
        return session.engine.virasoro(expression.n, evaluate_expression(expression.operand, session))
    if isinstance(expression, ZeroModeApply):
        operand = evaluate_expression(expression.operand, session)
        return session.engine.zero_mode(expression.state, operand)
    if isinstance(expression, DegreeQuery):
        return session.analyzer.degree(expression.state).degree
    raise TypeError(f"unknown expression node {type(expression).__name__}")


def _parse_bosons(text: str, rank: int) -> List[List[Fraction]]:
    vectors = []
    for part in text.split(','):
        part = part.strip()
        if not re.fullmatch(r'[0-9]+', part) or not 1 <= int(part) <= rank:
            raise click.BadParameter(f"玻色子下标 {part!r} 必须在 1..{rank} 之内",
                                     param_hint='--bosons')
        index = int(part)
        vectors.append([Fraction(int(i == index - 1)) for i in range(rank)])
    return vectors


# ----------------------------------------------------------------------
# 命令
# ----------------------------------------------------------------------

@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='配置文件路径，默认为仓库根目录的 config.ini')
@click.version_option('1.0.0', prog_name='heisenberg-voa')
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str]) -> None:
    """Heisenberg 顶点算子代数 M(1) 的精确结构计算工具"""
    try:
        ctx.obj = {'config': load_config(config_path)}
    except ConfigError as exc:
        console.failure(str(exc))
        ctx.exit(EXIT_USAGE)


@cli.command()
@common_options
@click.pass_context
@handle_errors
def dims(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """各权重片的维数 dim V_0 .. dim V_N"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    table = [dimension(session.algebra, n) for n in range(session.max_weight + 1)]
    report = _report(session, 'dims', {'max_weight': session.max_weight}, {'dims': table})
    emit(session, report, '维数: ' + ' '.join(str(d) for d in table))


@cli.command()
@click.argument('expression')
@common_options
@click.pass_context
@handle_errors
def degree(ctx, expression, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """态的次数及其结构见证与模见证"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    state = parse_state(expression, session.algebra)
    outcome = session.analyzer.degree(state)

    certificate: Dict[str, Any] = {'dropped_vacuum_part': outcome.dropped_vacuum_part}
    if outcome.structural_witness is not None:
        j, u = outcome.structural_witness
        certificate['structural'] = {'j1': j, 'u': u}
    if outcome.mode_witness is not None:
        n, witness = outcome.mode_witness
        certificate['mode'] = {'n': n, 'sample': witness.state, 'image': witness.image}
    if outcome.dropped_vacuum_part:
        console.warning("已忽略 V_0 分量")

    report = _report(session, 'degree', {'state': state}, {'degree': outcome.degree}, certificate)
    emit(session, report, f"次数: {outcome.degree}")


@cli.command()
@click.argument('expression')
@common_options
@click.pass_context
@handle_errors
def radical(ctx, expression, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """判定是否属于根 J(V)，并给出证书"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    state = parse_state(expression, session.algebra)
    certificate = session.analyzer.radical_member(state)
    report = _report(session, 'radical', {'state': state}, {'member': certificate.member},
                     {'j1': certificate.j1, 'w': certificate.w, 'witness': certificate.witness,
                      'note': certificate.note})
    if certificate.note:
        console.warning(certificate.note)
    emit(session, report, f"属于根 J(V): {'是' if certificate.member else '否'}")


@cli.command()
@click.argument('expression')
@common_options
@click.pass_context
@handle_errors
def decompose(ctx, expression, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """半准素分解，以及属于根时的构造性分解"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    state = parse_state(expression, session.algebra)
    parts = semi_primary_decompose(session.engine, state)

    radical_part: Optional[Dict] = None
    try:
        j1, w = session.analyzer.radical_decompose(state)
        radical_part = {'j1': j1, 'w': w}
    except NotInRadicalError as exc:
        logger.info("radical decomposition unavailable: %s", exc)

    report = _report(session, 'decompose', {'state': state},
                     {'semi_primary': parts, 'radical': radical_part})
    emit(session, report, f"半准素分量: {len(parts)} 个")


@cli.command()
@click.argument('expression')
@common_options
@click.pass_context
@handle_errors
def oinf(ctx, expression, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """判定是否属于 O_∞(V) = (L(0)+L(-1))V"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    state = parse_state(expression, session.algebra)
    certificate = session.analyzer.oinfinity_member(state)
    report = _report(session, 'oinf', {'state': state}, {'member': certificate.member},
                     {'w': certificate.w, 'radical': certificate.radical,
                      'momentum': certificate.momentum, 'module_scalar': certificate.module_scalar})
    emit(session, report, f"属于 O_∞(V): {'是' if certificate.member else '否'}")


@cli.command()
@click.option('--bosons', required=True, help='生成子代数的玻色子下标，逗号分隔')
@common_options
@click.pass_context
@handle_errors
def commutant(ctx, bosons, algebra_file, rank, max_weight, output_format, log_level, output_path):
    """交换子的维数与基，并检验张量分解的维数恒等式"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    h_prime = _parse_bosons(bosons, session.algebra.rank)
    check = session.analyzer.tensor_factor_dim_check(h_prime, session.max_weight)
    bases = {str(n): session.analyzer.commutant_basis(h_prime, n)
             for n in range(session.max_weight + 1)}
    report = _report(session, 'commutant',
                     {'bosons': bosons, 'max_weight': session.max_weight},
                     {'dims': check['commutant_dims'], 'tensor_check': check['success']},
                     {'basis': bases, 'counterexample': check['counterexample']})
    emit(session, report, '交换子维数: ' + ' '.join(str(d) for d in check['commutant_dims']),
         ok=check['success'])


@cli.command()
@click.option('--suite', type=click.Choice(('all',) + SUITES), default='all', help='验证套件')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='64 位随机种子')
@click.option('--trials', type=click.IntRange(min=1), default=None, help='随机试验次数')
@common_options
@click.pass_context
@handle_errors
def verify(ctx, suite, seed, trials, algebra_file, rank, max_weight, output_format, log_level,
           output_path):
    """运行验证套件；失败时退出码为 1"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    seed = session.config.seed if seed is None else seed
    trials = session.config.trials if trials is None else trials
    verifier = Verifier(session.engine, session.max_weight, seed, trials)
    outcome = verifier.run(suite)

    checks = to_jsonable(outcome['checks'])
    first_failure = next((c for c in checks if not c['success']), None)
    report = _report(
        session, 'verify',
        {'suite': suite, 'max_weight': session.max_weight, 'trials': trials},
        {'success': outcome['success'], 'failures': outcome['failures'],
         'first_counterexample': first_failure},
        {'checks': checks, 'digest': compute_digest(checks)},
        seed=seed,
    )
    passed = sum(1 for c in checks if c['success'])
    emit(session, report, f"验证 {suite}: {passed}/{len(checks)} 项通过",
         ok=outcome['success'])


@cli.command(name='eval')
@click.argument('expression')
@common_options
@click.pass_context
@handle_errors
def eval_command(ctx, expression, algebra_file, rank, max_weight, output_format, log_level,
                 output_path):
    """求值 L(n) <expr>、o(<state>) <expr> 或 deg(<state>)"""
    session = open_session(ctx, algebra_file, rank, max_weight, output_format, log_level, output_path)
    tree = parse_expression(expression, session.algebra)
    value = evaluate_expression(tree, session)
    report = _report(session, 'eval', {'expression': expression}, {'value': value})
    emit(session, report, f"值: {to_jsonable(value)}")
