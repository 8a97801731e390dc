"""
命令定义和配置
"""
from enum import Enum
from dataclasses import dataclass
from typing import Tuple


class Command(Enum):
    """workbench 命令枚举"""

    # 校验代数文件的全部公理
    VALIDATE = "validate"

    # Casimir 元及其恒等式
    CASIMIR = "casimir"

    # Euler 示性数 χ(A) = μ∘Δ(1)
    EULER = "euler"

    # Hochschild 同调 / 上同调
    HH = "hh"
    HHCOH = "hhcoh"

    # 奇异 Hochschild 上同调（Tate 锥的同调）及维数分情形公式
    HHSG = "hhsg"

    # 约化 HH 上的 ⋆ 乘法表；HH_sg 上的 cup 乘法表
    GH_TABLE = "gh-table"
    CUP_TABLE = "cup-table"

    # 同伦收缩、长正合列、Leibniz 反常
    RETRACT_CHECK = "retract-check"
    LES_CHECK = "les-check"
    ANOMALY_CHECK = "anomaly-check"

    # 同态诱导的传递同构与 GH 不变性
    TRANSPORT = "transport"
    INVARIANCE_CHECK = "invariance-check"

    # 汇总：validate + hh + hhsg + 各项检查
    REPORT = "report"


@dataclass
class CommandConfig:
    """命令配置"""
    command: Command

    # 第二个参数是同态文件（或 zig-zag 中的多个同态文件）
    needs_morphism: bool

    # 是否使用次数窗口
    uses_window: bool

    # 是否使用随机采样（--samples / --seed）
    uses_samples: bool

    # 未给出 --min/--max 时的默认窗口
    default_window: Tuple[int, int]

    # 描述
    description: str


# 预定义的命令配置
COMMAND_CONFIGS = {
    Command.VALIDATE: CommandConfig(
        command=Command.VALIDATE,
        needs_morphism=False, uses_window=False, uses_samples=False, default_window=(0, 0),
        description="检查 dg Frobenius 代数的公理、余代数结构和 Calabi-Yau 映射"
    ),
    Command.CASIMIR: CommandConfig(
        command=Command.CASIMIR,
        needs_morphism=False, uses_window=False, uses_samples=False, default_window=(0, 0),
        description="输出 Casimir 元 Δ(1) 并检查它的恒等式"
    ),
    Command.EULER: CommandConfig(
        command=Command.EULER,
        needs_morphism=False, uses_window=False, uses_samples=False, default_window=(0, 0),
        description="输出 Euler 示性数 χ(A)"
    ),
    Command.HH: CommandConfig(
        command=Command.HH,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(0, 10),
        description="窗口内的 HH_*(A, A) 维数与约化维数"
    ),
    Command.HHCOH: CommandConfig(
        command=Command.HHCOH,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(0, 10),
        description="窗口内的 HH^*(A, A) 维数"
    ),
    Command.HHSG: CommandConfig(
        command=Command.HHSG,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(-2, 10),
        description="HH_sg^*(A, A) 维数，与 HH^*、HH_* 推出的分情形维数对照"
    ),
    Command.GH_TABLE: CommandConfig(
        command=Command.GH_TABLE,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(1, 8),
        description="约化 HH 类上的 Goresky-Hingston ⋆ 乘法表，并与 HH_sg 的 cup 积对照"
    ),
    Command.CUP_TABLE: CommandConfig(
        command=Command.CUP_TABLE,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(0, 6),
        description="HH_sg 上的 cup 乘法表"
    ),
    Command.RETRACT_CHECK: CommandConfig(
        command=Command.RETRACT_CHECK,
        needs_morphism=False, uses_window=True, uses_samples=True, default_window=(0, 6),
        description="Π∘ι = id 与 id - ιΠ = δH + Hδ 的随机检查"
    ),
    Command.LES_CHECK: CommandConfig(
        command=Command.LES_CHECK,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(-2, 10),
        description="HH_{i-k} -> HH^i -> HH_sg^i -> HH_{i-k+1} 长正合列逐点检查"
    ),
    Command.ANOMALY_CHECK: CommandConfig(
        command=Command.ANOMALY_CHECK,
        needs_morphism=False, uses_window=True, uses_samples=False, default_window=(0, 6),
        description="⋆ 的 Leibniz 反常与闭式对照、⋆ 的结合律"
    ),
    Command.TRANSPORT: CommandConfig(
        command=Command.TRANSPORT,
        needs_morphism=True, uses_window=True, uses_samples=False, default_window=(1, 6),
        description="拟同构诱导的 HH_sg(A) -> HH_sg(B) 矩阵"
    ),
    Command.INVARIANCE_CHECK: CommandConfig(
        command=Command.INVARIANCE_CHECK,
        needs_morphism=True, uses_window=True, uses_samples=False, default_window=(1, 6),
        description="沿 zig-zag 检查 GH 代数结构的不变性"
    ),
    Command.REPORT: CommandConfig(
        command=Command.REPORT,
        needs_morphism=False, uses_window=True, uses_samples=True, default_window=(0, 6),
        description="汇总：公理、HH、HH_sg 与全部检查"
    ),
}


def get_command_config(command: Command) -> CommandConfig:
    """获取命令配置"""
    return COMMAND_CONFIGS[command]


def get_command_from_string(command_str: str) -> Command:
    """从字符串获取命令"""
    command_map = {c.value: c for c in Command}
    command_map.update({
        "check": Command.VALIDATE,
        "chi": Command.EULER,
        "homology": Command.HH,
        "cohomology": Command.HHCOH,
        "sg": Command.HHSG,
        "gh": Command.GH_TABLE,
        "cup": Command.CUP_TABLE,
        "retract": Command.RETRACT_CHECK,
        "les": Command.LES_CHECK,
        "anomaly": Command.ANOMALY_CHECK,
        "invariance": Command.INVARIANCE_CHECK,
    })

    command_str_lower = command_str.lower().replace('_', '-')
    if command_str_lower not in command_map:
        raise ValueError(
            f"Unknown command: {command_str}. Available commands: {', '.join(command_map.keys())}"
        )

    return command_map[command_str_lower]
