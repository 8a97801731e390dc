"""报告生成模块"""

from .run_report import FORMATS, ReportSection, RunReport, emit_report, render_value

__all__ = ['FORMATS', 'ReportSection', 'RunReport', 'emit_report', 'render_value']
