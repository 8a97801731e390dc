"""
HochschildBench 批处理入口 - 一条命令对应一项计算或检查，报告写到标准输出或 --out
"""
import sys
import io
import traceback
from pathlib import Path
from datetime import datetime
from typing import Dict, List, Optional

from hochschild_bench import __version__
from hochschild_bench.algebra_io import load_algebra, parse_morphism
from hochschild_bench.bench_config import FORMATS, BenchConfig, get_config, load_config
from hochschild_bench.chain_products import anomaly_check, cup_homotopy_sample_check, star_associativity_check
from hochschild_bench.errors import BenchError, CheckLedger
from hochschild_bench.frobenius_algebra import (FrobeniusAlgebra, calabi_yau_check, coalgebra_check, euler_char,
                                                verify_casimir_identities)
from hochschild_bench.hochschild_complexes import Window, hh_cohomology, hh_homology
from hochschild_bench.morphism_transport import gh_invariance_check, load_morphism, load_zigzag, transport_iso
from hochschild_bench.reporters import RunReport, emit_report
from hochschild_bench.result_cache import ResultCache
from hochschild_bench.run_modes import COMMAND_CONFIGS, Command, get_command_config, get_command_from_string
from hochschild_bench.tate_singular import cup_table, gh_table, hh_sg, iota_cup_check, les_check, retract_check

# 设置标准输出为 UTF-8 编码
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8')

# 日志文件
log_file = None

VALUE_FLAGS = ('--min', '--max', '--p-cap', '--samples', '--seed', '--format', '--out', '--config')
SWITCH_FLAGS = ('--no-cache', '--full')


def log(message):
    """进度信息写到 stderr 和日志文件；标准输出只留给报告"""
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    log_msg = f"[{timestamp}] {message}"
    print(log_msg, file=sys.stderr)
    if log_file:
        log_file.write(log_msg + "\n")
        log_file.flush()


def usage():
    print("用法: python workbench.py <命令> <代数文件 | 同态文件...> [选项]", file=sys.stderr)
    print(file=sys.stderr)
    print("可用命令:", file=sys.stderr)
    for command, config in COMMAND_CONFIGS.items():
        print(f"  {command.value:<17} - {config.description}", file=sys.stderr)
    print(file=sys.stderr)
    print("选项:", file=sys.stderr)
    print("  --min N / --max N  - 次数窗口（默认: 按命令）", file=sys.stderr)
    print("  --p-cap N          - 非单连通代数的 bar 长度截断（结果标记为近似）", file=sys.stderr)
    print("  --samples N        - 随机检查的样本数", file=sys.stderr)
    print("  --seed N           - 随机种子", file=sys.stderr)
    print("  --format F         - text / json / csv", file=sys.stderr)
    print("  --out FILE         - 报告写到文件（默认: 标准输出）", file=sys.stderr)
    print("  --full             - gh-table 在完整复形上取表（要求 χ = 0）", file=sys.stderr)
    print("  --no-cache         - 不读写结果缓存", file=sys.stderr)
    print("  --config FILE      - 配置文件（默认: ./.hochschild_bench.json）", file=sys.stderr)
    print(file=sys.stderr)
    print("示例:", file=sys.stderr)
    print("  python workbench.py hh fixtures/S3.json --min 0 --max 10", file=sys.stderr)
    print("  python workbench.py retract-check fixtures/S2.json --samples 50 --seed 7", file=sys.stderr)
    print("  python workbench.py invariance-check fixtures/scale2.json --min 1 --max 6", file=sys.stderr)


def parse_args(argv: List[str]):
    """
    手工解析参数

    Returns:
        (命令字符串, 位置参数, {选项: 值}, {开关})
    """
    values: Dict[str, str] = {}
    switches = set()
    positional: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in VALUE_FLAGS:
            if i + 1 >= len(argv):
                raise ValueError(f"{arg} 需要一个值")
            values[arg] = argv[i + 1]
            i += 2
            continue
        if arg in SWITCH_FLAGS:
            switches.add(arg)
        elif arg.startswith('--'):
            raise ValueError(f"未知选项: {arg}")
        else:
            positional.append(arg)
        i += 1
    if not positional:
        raise ValueError("缺少命令")
    return positional[0], positional[1:], values, switches


def _int_flag(values: Dict[str, str], flag: str) -> Optional[int]:
    if flag not in values:
        return None
    try:
        return int(values[flag])
    except ValueError:
        raise ValueError(f"{flag} 需要整数: {values[flag]}")


def apply_flags(cfg: BenchConfig, values: Dict[str, str]) -> BenchConfig:
    """命令行选项覆盖配置文件"""
    fmt = values.get('--format')
    if fmt is not None and fmt not in FORMATS:
        raise ValueError(f"Unknown format: {fmt}. Available formats: {', '.join(FORMATS)}")
    window_min, window_max = _int_flag(values, '--min'), _int_flag(values, '--max')
    explicit = cfg.explicit_window or window_min is not None or window_max is not None
    return cfg.override(window_min=window_min, window_max=window_max, p_cap=_int_flag(values, '--p-cap'),
                        samples=_int_flag(values, '--samples'), seed=_int_flag(values, '--seed'),
                        format=fmt, explicit_window=explicit)


def resolve_window(command: Command, cfg: BenchConfig) -> Window:
    if cfg.explicit_window:
        return Window(cfg.window_min, cfg.window_max, cfg.p_cap)
    low, high = get_command_config(command).default_window
    return Window(low, high, cfg.p_cap)


# ---------- 各命令 ----------

def _validate_section(report: RunReport, A: FrobeniusAlgebra) -> None:
    report.add_table(f"basis of {A.name}", ['index', 'name', 'degree'],
                     [[i, A.name_of(i), A.degree(i)] for i in range(A.dim)],
                     k=A.k, simply_connected=A.is_simply_connected)
    report.add_ledger(verify_casimir_identities(A))
    report.add_ledger(coalgebra_check(A))
    report.add_ledger(calabi_yau_check(A))


def _hh_rows(A: FrobeniusAlgebra, window: Window) -> List[List]:
    full = hh_homology(A, window)
    reduced = hh_homology(A, window, reduced=True)
    return [[n, full.dim(n), reduced.dim(n)] for n in window.degrees()]


def _hhsg_section(report: RunReport, A: FrobeniusAlgebra, window: Window) -> None:
    sg = hh_sg(A, window, check_exactness=False)
    k = A.k
    rows = [[n, sg.dim(n), sg.case_dims.get(n), sg.cohomology_dims.get(n), sg.chain_dims.get(n - k + 1)]
            for n in window.degrees()]
    report.add_table(f"HH_sg of {A.name}", ['degree', 'HH_sg', 'case_formula', 'HH^n', 'HH_(n-k+1)'], rows,
                     chi_zero=euler_char(A).is_zero, approximate=sg.approximate)
    case = CheckLedger('case-split')
    for n, d in sg.dims().items():
        case.tick()
        if sg.case_dims.get(n) != d:
            case.fail('case-split', f"n={n}", f"D: {d}, formula: {sg.case_dims.get(n)}")
    report.add_ledger(case)
    report.add_ledger(les_check(A, window, sg))


def _retract_section(report: RunReport, A: FrobeniusAlgebra, window: Window, cfg: BenchConfig) -> None:
    report.add_ledger(retract_check(A, window, cfg.samples, cfg.seed))
    report.add_ledger(iota_cup_check(A, window, cfg.samples, cfg.seed))
    report.add_ledger(cup_homotopy_sample_check(A, window, cfg.samples, cfg.seed))


def _anomaly_section(report: RunReport, A: FrobeniusAlgebra, window: Window) -> None:
    report.add_ledger(anomaly_check(A, window))
    report.add_ledger(star_associativity_check(A, window, max_total=window.n_max))


def run(command: Command, inputs: List[str], cfg: BenchConfig, full: bool = False) -> RunReport:
    """
    执行一条命令，返回报告（不写输出）

    Raises:
        BenchError: 各模块的输入、代数或计算错误
    """
    command_config = get_command_config(command)
    if not inputs:
        raise ValueError(f"{command.value} 需要输入文件")
    window = resolve_window(command, cfg)
    echo = dict(cfg.echo(), window=[window.n_min, window.n_max], version=__version__)
    if command == Command.GH_TABLE:
        echo['full'] = full
    report = RunReport(command.value, [Path(p).name for p in inputs], echo)

    if command_config.needs_morphism:
        if command == Command.TRANSPORT:
            phi, _ = load_morphism(inputs[0])
            result = transport_iso(phi, window, cfg.max_stable_level)
            rows = [[n, r, tuple(row)] for n, matrix in sorted(result.matrices.items()) for r, row in enumerate(matrix)]
            report.add_table(f"HH_sg({result.source}) -> HH_sg({result.target})", ['degree', 'row', 'entries'],
                             rows, level=result.level, quasi_iso=phi.quasi_iso)
        else:
            steps = load_zigzag(inputs)
            result = gh_invariance_check(steps, window, cfg.max_stable_level)
            rows = [[n, r, tuple(row)] for n, matrix in sorted(result.composite.items()) for r, row in enumerate(matrix)]
            report.add_table(f"composite {result.source} -> {result.target}", ['degree', 'row', 'entries'], rows)
            mapped = [[f"{left[0]}:{left[1]}", f"{right[0]}:{right[1]}", n, coords]
                      for (left, right), (n, coords) in sorted(result.mapped_table.items())]
            report.add_table("mapped GH products", ['left', 'right', 'degree', 'T(x*y)'], mapped)
            report.add_ledger(result.ledger)
        return report

    A = load_algebra(inputs[0])
    if command == Command.VALIDATE:
        _validate_section(report, A)
    elif command == Command.CASIMIR:
        cas = A.casimir
        report.add_table(f"Casimir of {A.name}", ['e', 'f', 'coeff'],
                         [[A.name_of(e), A.name_of(f), c] for e, f, c in cas.terms], rendered=cas.render(A))
        report.add_ledger(verify_casimir_identities(A))
    elif command == Command.EULER:
        chi = euler_char(A)
        report.add_table(f"chi({A.name})", ['basis', 'coeff'], [[A.name_of(i), c] for i, c in chi.value],
                         is_zero=chi.is_zero, degree=chi.degree_k)
    elif command == Command.HH:
        report.add_table(f"HH_* of {A.name}", ['degree', 'HH', 'HH_reduced'], _hh_rows(A, window))
    elif command == Command.HHCOH:
        coh = hh_cohomology(A, window)
        report.add_table(f"HH^* of {A.name}", ['degree', 'HH^'], [[n, coh.dim(n)] for n in window.degrees()])
    elif command == Command.HHSG:
        _hhsg_section(report, A, window)
    elif command == Command.GH_TABLE:
        table = gh_table(A, window, full=full)
        report.add_table("classes", ['degree', 'index', 'representative'], [list(c) for c in table.classes])
        report.add_table("products", ['left', 'right', 'degree', 'coords'], table.rows(),
                         degree_shift=table.degree_shift)
        if table.ledger is not None:
            report.add_ledger(table.ledger)
    elif command == Command.CUP_TABLE:
        sg = hh_sg(A, window, check_exactness=False)
        rows = [[f"{left[0]}:{left[1]}", f"{right[0]}:{right[1]}", n, coords]
                for (left, right), (n, coords) in sorted(cup_table(sg).items())]
        report.add_table(f"cup on HH_sg({A.name})", ['left', 'right', 'degree', 'coords'], rows)
    elif command == Command.RETRACT_CHECK:
        _retract_section(report, A, window, cfg)
    elif command == Command.LES_CHECK:
        report.add_ledger(les_check(A, window))
    elif command == Command.ANOMALY_CHECK:
        _anomaly_section(report, A, window)
    elif command == Command.REPORT:
        _validate_section(report, A)
        report.add_table(f"HH_* of {A.name}", ['degree', 'HH', 'HH_reduced'], _hh_rows(A, window))
        _hhsg_section(report, A, window)
        _retract_section(report, A, window, cfg)
        _anomaly_section(report, A, window)
    return report


def _load_named_config(path: str) -> BenchConfig:
    if not Path(path).exists():
        raise ValueError(f"配置文件不存在: {path}")
    return load_config(path)


def _cache_inputs(command: Command, inputs: List[str]) -> List[str]:
    """参与缓存键的文件：同态文件连同它引用的代数文件"""
    if not get_command_config(command).needs_morphism:
        return list(inputs)
    paths = []
    for path in inputs:
        desc = parse_morphism(path)
        paths.extend([path, str(desc.source), str(desc.target)])
    return paths


def main():
    global log_file

    if len(sys.argv) < 2 or sys.argv[1] in ('-h', '--help'):
        usage()
        sys.exit(2)

    try:
        command_str, inputs, values, switches = parse_args(sys.argv[1:])
        command = get_command_from_string(command_str)
        cfg = apply_flags(get_config() if '--config' not in values else _load_named_config(values['--config']),
                          values)
    except (ValueError, BenchError) as e:
        print(f"错误: {e}", file=sys.stderr)
        sys.exit(2)

    # 创建日志文件
    log_dir = Path(cfg.log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    log_filename = log_dir / f"workbench_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
    log_file = open(log_filename, 'w', encoding='utf-8')
    try:
        # 库的日志写到同一个文件
        import hochschild_bench.logger as logger_module
        lib_logger = logger_module.setup_logger(name="hochschild_bench", log_file_path=str(log_filename))
        logger_module._default_logger = lib_logger

        log(f"日志文件: {log_filename}")
        log(f"命令: {command.value} - {get_command_config(command).description}")
        log(f"输入: {' '.join(inputs)}")

        full = '--full' in switches
        fmt = cfg.format
        cache = ResultCache(cfg.cache_dir, enabled=cfg.use_cache and '--no-cache' not in switches)
        started = datetime.now()
        try:
            for path in inputs:
                if not Path(path).exists():
                    raise FileNotFoundError(path)
            flags = dict(cfg.echo(), format=fmt, full=full, version=__version__, explicit_window=cfg.explicit_window)
            key = ResultCache.make_key(_cache_inputs(command, inputs), command.value, flags)
            cached = cache.get(key)
            if cached is not None:
                status, payload = cached
                log("✓ 使用缓存结果")
            else:
                report = run(command, inputs, cfg, full=full)
                payload = emit_report(report, fmt)
                status = 0 if report.passed else 1
                cache.put(key, payload, status)
                for ledger in report.ledgers:
                    log(f"  {'✓' if ledger.passed else '✗'} {ledger.name}: {ledger.checked} 项, "
                        f"失败 {len(ledger.failures)} 项")
        except FileNotFoundError as e:
            log(f"错误：文件不存在: {e}")
            sys.exit(2)
        except BenchError as e:
            log(f"错误: {type(e).__name__}: {e}")
            lib_logger.error(traceback.format_exc())
            sys.exit(e.exit_code)
        except ValueError as e:
            log(f"错误: {e}")
            sys.exit(2)

        if '--out' in values:
            out_path = Path(values['--out'])
            out_path.parent.mkdir(parents=True, exist_ok=True)
            out_path.write_bytes(payload)
            log(f"报告: {out_path.resolve()}")
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        lib_logger.info(f"耗时 {(datetime.now() - started).total_seconds():.2f}s")
        log("✓ 通过" if status == 0 else "✗ 存在失败的检查")
    finally:
        # 各个 sys.exit 分支都要走到这里
        log_file.close()
        log_file = None
    sys.exit(status)


if __name__ == "__main__":
    main()
