"""
异常体系与检查账本

所有库异常都继承 BenchError，并带一个 details 字典；每个大类有固定的退出码，
workbench.py 捕获后据此 sys.exit。

检查类操作（各种恒等式验证）不直接抛异常，而是返回 CheckLedger，只有在
strict 模式下才把第一条失败转成 IdentityFailure / ExactnessFailure。
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class BenchError(Exception):
    """所有 hochschild_bench 异常的基类"""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': type(self).__name__,
            'message': self.message,
            'details': {k: str(v) for k, v in self.details.items()},
        }


# ---------- 输入错误（退出码 2） ----------

class InputError(BenchError):
    exit_code = 2


class ParseError(InputError):
    """文件内容无法解析（JSON 语法错误、非法有理数等）"""

    def __init__(self, line: Optional[int], message: str):
        where = f"第 {line} 行: " if line is not None else ""
        super().__init__(f"{where}{message}", line=line)
        self.line = line


class SchemaError(InputError):
    """字段缺失、未知字段、重名基元素等结构问题"""

    def __init__(self, key: str, message: str = ""):
        super().__init__(message or f"非法字段: {key}", key=key)
        self.key = key


# ---------- 代数错误（退出码 2） ----------

class AlgebraError(BenchError):
    exit_code = 2


class AxiomViolation(AlgebraError):
    """Frobenius 代数公理不成立；violations 保存全部违反项"""

    def __init__(self, axiom: str, witness: Any, violations: Optional[List[Dict[str, Any]]] = None):
        self.violations = violations or [{'axiom': axiom, 'witness': witness}]
        super().__init__(f"公理 {axiom} 不成立，见证: {witness}"
                         + (f"（共 {len(self.violations)} 项违反）" if len(self.violations) > 1 else ""),
                         axiom=axiom, witness=witness)
        self.axiom = axiom
        self.witness = witness


class NotConnected(AlgebraError):
    pass


class NotFiniteRank(AlgebraError):
    pass


class NotSimplyConnected(AlgebraError):
    pass


class NotAnAlgebraMap(AlgebraError):

    def __init__(self, law: str, witness: Any):
        super().__init__(f"不是 dg 代数同态: {law} 在 {witness} 处不成立", law=law, witness=witness)
        self.law = law
        self.witness = witness


class PreconditionError(AlgebraError):
    pass


# ---------- 计算错误（退出码 1） ----------

class ComputationError(BenchError):
    exit_code = 1


class CompositionNotZero(ComputationError):
    pass


class IndexOutOfRange(ComputationError):
    pass


class WindowOverflow(ComputationError):
    pass


class NotInvertible(ComputationError):
    pass


class WindowTooSmall(ComputationError):
    pass


# ---------- 检查失败（退出码 1） ----------

class CheckFailure(BenchError):
    exit_code = 1


class IdentityFailure(CheckFailure):

    def __init__(self, identity: str, witness: Any, residual: Any = None):
        super().__init__(f"恒等式 {identity} 不成立，见证: {witness}",
                         identity=identity, witness=witness, residual=residual)
        self.identity = identity
        self.witness = witness
        self.residual = residual


class ExactnessFailure(CheckFailure):

    def __init__(self, node: str, **details: Any):
        super().__init__(f"长正合列在节点 {node} 处不正合", node=node, **details)
        self.node = node


@dataclass
class CheckRecord:
    """一条失败记录"""
    identity: str          # 恒等式名称
    witness: str           # 见证（基元素、词或样本编号）
    residual: str = ""     # 残差（两边之差），可为空


@dataclass
class CheckLedger:
    """检查账本：记录检查了多少实例、哪些失败"""
    name: str
    checked: int = 0
    failures: List[CheckRecord] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tick(self, count: int = 1) -> None:
        self.checked += count

    def fail(self, identity: str, witness: Any, residual: Any = "") -> None:
        self.failures.append(CheckRecord(identity, str(witness), str(residual) if residual != "" else ""))

    def merge(self, other: 'CheckLedger') -> 'CheckLedger':
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def raise_if_failed(self) -> None:
        if self.failures:
            first = self.failures[0]
            raise IdentityFailure(first.identity, first.witness, first.residual)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'failures': [{'identity': r.identity, 'witness': r.witness, 'residual': r.residual}
                         for r in self.failures],
            'notes': {k: str(v) for k, v in self.notes.items()},
        }
