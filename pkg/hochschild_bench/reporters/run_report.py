"""
运行报告 - 收集一次命令的全部结果并序列化

序列化是确定性的：有理数写成 "p/q"，表格行按加入顺序（调用方按规范基顺序加入），
报告里不含时间戳和耗时。
"""
import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..errors import CheckLedger

FORMATS = ('text', 'json', 'csv')


def render_value(value: Any) -> str:
    """单个单元格的文本形式"""
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list)):
        return '(' + ', '.join(render_value(v) for v in value) + ')'
    return str(value)


def _json_value(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return render_value(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return str(value)


@dataclass
class ReportSection:
    """报告中的一张表"""
    title: str
    header: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RunReport:
    """一次命令运行的结果"""
    command: str
    inputs: List[str]
    config: Dict[str, Any]
    sections: List[ReportSection] = field(default_factory=list)
    ledgers: List[CheckLedger] = field(default_factory=list)

    def add_table(self, title: str, header: Sequence[str], rows: Sequence[Sequence[Any]],
                  **notes: Any) -> ReportSection:
        section = ReportSection(title, list(header), [list(r) for r in rows], dict(notes))
        self.sections.append(section)
        return section

    def add_ledger(self, ledger: CheckLedger) -> None:
        self.ledgers.append(ledger)

    @property
    def passed(self) -> bool:
        return all(ledger.passed for ledger in self.ledgers)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'inputs': list(self.inputs),
            'config': _json_value(self.config),
            'passed': self.passed,
            'sections': [{
                'title': s.title,
                'header': s.header,
                'rows': [[_json_value(v) for v in row] for row in s.rows],
                'notes': _json_value(s.notes),
            } for s in self.sections],
            'checks': [ledger.to_dict() for ledger in self.ledgers],
        }


def _emit_text(report: RunReport) -> str:
    out = io.StringIO()
    out.write(f"# {report.command} {' '.join(report.inputs)}\n")
    for key in sorted(report.config):
        out.write(f"# {key}: {render_value(report.config[key])}\n")
    for section in report.sections:
        cells = [section.header] + [[render_value(v) for v in row] for row in section.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(section.header))]
        out.write(f"\n== {section.title} ==\n")
        for row in cells:
            out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
        for key in sorted(section.notes):
            out.write(f"  ({key}: {render_value(section.notes[key])})\n")
    for ledger in report.ledgers:
        status = 'PASS' if ledger.passed else 'FAIL'
        out.write(f"\n[{status}] {ledger.name}: {ledger.checked} checked, {len(ledger.failures)} failed\n")
        for record in ledger.failures:
            out.write(f"  - {record.identity} @ {record.witness}")
            out.write(f": {record.residual}\n" if record.residual else "\n")
        for key in sorted(ledger.notes):
            out.write(f"  ({key}: {ledger.notes[key]})\n")
    return out.getvalue()


def _emit_csv(report: RunReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    out.write(f"# {report.command} {' '.join(report.inputs)}\n")
    for section in report.sections:
        out.write(f"# {section.title}\n")
        writer.writerow(section.header)
        for row in section.rows:
            writer.writerow([render_value(v) for v in row])
    if report.ledgers:
        out.write("# checks\n")
        writer.writerow(['check', 'passed', 'checked', 'failed'])
        for ledger in report.ledgers:
            writer.writerow([ledger.name, render_value(ledger.passed), ledger.checked, len(ledger.failures)])
    return out.getvalue()


def emit_report(report: RunReport, fmt: str = 'text') -> bytes:
    """
    序列化报告

    Args:
        fmt: "text" / "json" / "csv"

    Returns:
        UTF-8 字节
    """
    if fmt == 'text':
        text = _emit_text(report)
    elif fmt == 'json':
        text = json.dumps(report.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    elif fmt == 'csv':
        text = _emit_csv(report)
    else:
        raise ValueError(f"Unknown format: {fmt}. Available formats: {', '.join(FORMATS)}")
    return text.encode('utf-8')
