# -*- coding: utf-8 -*-
"""
报告结构测试
"""

import json
from fractions import Fraction

import pytest

from core.fock import ModuleState, State, identity_algebra, make_algebra
from core.radical import RadicalCertificate
from tests.helpers import h
from utils.report import (
    REPORT_FIELDS, build_report, canonical_json, compute_digest, render_json,
    render_text, to_jsonable, validate_report,
)


def _sample_report():
    algebra = make_algebra(1, [[2]])
    certificate = RadicalCertificate(member=True, j1=-h(1), w=h(1))
    return build_report('radical', algebra, {'state': 'h1(-2)|0>'}, {'member': True},
                        certificate=certificate)


def test_fields_are_fixed():
    report = _sample_report()
    assert tuple(report) == REPORT_FIELDS
    assert report['algebra'] == {'rank': 1, 'gram': [['2']]}
    assert report['version'] == "1"
    assert report['seed'] is None


def test_certificate_is_rendered_exactly():
    certificate = _sample_report()['certificate']
    assert certificate['j1'] == "-1*h1(-1)|0>"
    assert certificate['w'] == "h1(-1)|0>"
    assert certificate['witness'] is None


def test_scalars_stay_exact():
    assert to_jsonable(Fraction(1, 2)) == "1/2"
    assert to_jsonable([Fraction(3), True, None, 4]) == ["3", True, None, 4]
    assert to_jsonable(ModuleState.vacuum((Fraction(-1, 3),))) == {
        'state': "|0>", 'momentum': ["-1/3"],
    }


def test_unknown_objects_rejected():
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_digest_is_order_independent():
    a = {'x': Fraction(1, 2), 'y': [State.vacuum()]}
    b = {'y': [State.vacuum()], 'x': Fraction(1, 2)}
    assert canonical_json(a) == canonical_json(b)
    assert compute_digest(a) == compute_digest(b)
    assert compute_digest(a) != compute_digest({'x': Fraction(1, 3), 'y': []})
    assert len(compute_digest(a)) == 64


def test_validation():
    report = _sample_report()
    assert validate_report(report) == {'success': True, 'errors': []}

    broken = dict(report)
    del broken['seed']
    broken['extra'] = 1
    broken['version'] = "9"
    outcome = validate_report(broken)
    assert not outcome['success']
    assert "缺少字段 'seed'" in outcome['errors']
    assert "多余字段 'extra'" in outcome['errors']
    assert "不支持的版本 '9'" in outcome['errors']
    assert validate_report([])['errors'] == ['报告必须是 JSON 对象']


def test_renderings_agree():
    report = build_report('dims', identity_algebra(1), {'max_weight': 2}, {'dims': [1, 1, 2]})
    assert json.loads(render_json(report)) == report
    text = render_text(report)
    assert "command: dims" in text
    assert "  dims:" in text
    assert "    - 2" in text
    assert "certificate: null" in text
