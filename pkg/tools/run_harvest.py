#!/usr/bin/env python3
"""
语境性收获命令行工具

子命令:
    sweep                    执行参数扫描并写出 CSV
    scenario check SET_ID    打印五角星角度组检查报告
    cf MODEL_FILE            计算经验模型的语境分数
    prop KIND --params ...   计算单个涂抹传播子（闭式与数值参照）

退出码: 0 成功，1 配置错误，2 数值失败
"""
import sys
import logging
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))

from src.common.errors import ConfigurationError, NumericalError
from src.contextuality.fraction import contextual_fraction, normalized_violation
from src.field.detector_params import DetectorParams, PropagatorKind, SignPair
from src.field.oracles import evaluate_oracle
from src.field.propagators import evaluate_propagator
from src.scenarios.empirical import validate_model
from src.scenarios.model_io import load_model, scenario_of
from src.scenarios.pentagram import check_scenario
from src.sweeps.sweep_config import SweepConfig, apply_overrides, load_sweep_config, preset
from src.sweeps.sweep_runner import genuine_consistent, run_sweep
from src.utils.common import (
    create_base_parser,
    parse_key_value_params,
    parse_real,
    print_banner,
    print_status_info,
    setup_logging,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def build_sweep_config(args) -> SweepConfig:
    """预设 → 配置文件 → 命令行，后者覆盖前者"""
    if args.config:
        cfg = load_sweep_config(args.config)
    else:
        cfg = preset(args.preset) if args.preset else SweepConfig()
    if args.config and args.preset:
        logger.warning("⚠️ 同时给出 --config 与 --preset，以配置文件为准")
    overrides = {
        'setup': args.setup,
        'angle_set': args.angle_set,
        'omega': args.omega,
        'T': args.T,
        'alpha_invsqrt': args.alpha_invsqrt,
        'L': args.L,
        'lambda': args.coupling,
        'threshold': args.threshold,
        'out': args.out,
        'workers': args.workers,
    }
    return apply_overrides(cfg, overrides)


def command_sweep(args) -> int:
    cfg = build_sweep_config(args)
    print_banner("🚀 语境性收获参数扫描", cfg.name)
    print_status_info({
        "配置": cfg.setup.value,
        "角度组": cfg.angle_set,
        "Ω 网格": f"{cfg.omega_grid.min}:{cfg.omega_grid.max}:{cfg.omega_grid.count}",
        "T": cfg.temporal_widths,
        "α^(-1/2)": cfg.alpha_invsqrt,
        "L": cfg.separations or "-",
        "λ": cfg.coupling,
        "网格点数": cfg.n_points,
        "输出": cfg.output_path,
    }, "扫描配置")

    rows = run_sweep(cfg, write=True, progress=not args.no_progress)
    failures = [row for row in rows if row.error]
    genuine = sum(1 for row in rows if row.genuine)
    inconsistent = [row for row in rows if not genuine_consistent(row, cfg.threshold)]
    print_status_info({
        "总行数": len(rows),
        "真收获行": genuine,
        "失败行": len(failures),
        "判据不一致": len(inconsistent),
    }, "扫描结果")
    if failures:
        print(f"⚠️ {len(failures)} 个网格点计算失败，详见 error 列")
    print(f"✅ 结果已写入 {cfg.output_path}")
    return EXIT_OK


def command_scenario(args) -> int:
    report = check_scenario(args.set_id)
    print_banner("📐 五角星场景检查", report.name)
    info = {f"语境 {c}": f"{v:.3e}" for c, v in report.context_commutators.items()}
    info.update({f"非语境 {c}": f"{v:.3e}" for c, v in report.non_context_commutators.items()})
    info.update({
        "幂等偏差": f"{report.idempotency:.3e}",
        "基态求和": f"{report.ground_sum:.12f}",
        "交叉项": f"{report.cross_term:.6e}",
        "约化 α": ", ".join(f"{a:.10f}" for a in report.reduced_alphas),
    })
    print_status_info(info, "约束")
    for warning in report.warnings:
        print(f"⚠️ {warning}")
    for issue in report.issues:
        print(f"❌ {issue}")
    print("✅ 场景有效" if report.is_valid else "❌ 场景无效")
    return EXIT_OK if report.is_valid else EXIT_NUMERICAL


def command_cf(args) -> int:
    model = load_model(args.model_file)
    report = validate_model(model)
    for warning in report.warnings:
        print(f"⚠️ {warning}")
    for issue in report.issues:
        print(f"❌ {issue}")
    if not report.is_valid:
        raise ConfigurationError(f"经验模型未通过检查: {args.model_file}")
    scen = scenario_of(model)
    cf = contextual_fraction(model, scen)
    print_status_info({
        "模型": model.scenario_id,
        "语境数": len(model.contexts),
        "CF": f"{cf:.15g}",
        "NCF": f"{1.0 - cf:.15g}",
        "归一化违背": f"{normalized_violation(model, scen):.15g}",
    }, "语境分数")
    return EXIT_OK


def _parse_kind(text: str) -> PropagatorKind:
    lookup = {kind.name.lower(): kind for kind in PropagatorKind}
    lookup.update({kind.value.lower(): kind for kind in PropagatorKind})
    try:
        return lookup[text.lower()]
    except KeyError:
        raise ConfigurationError(f"未知传播子种类: {text}，可选 {sorted(k.name.lower() for k in PropagatorKind)}") from None


def command_prop(args) -> int:
    kind = _parse_kind(args.kind)
    params = {key: value for key, value in parse_key_value_params(args.params).items()}
    known = {'omega', 'T', 'alpha', 'tbar', 'omega2', 'T2', 'alpha2', 'tbar2', 'L', 'p', 'q', 'same', 'oracle'}
    unknown = set(params) - known
    if unknown:
        raise ConfigurationError(f"未知参数: {sorted(unknown)}")

    def real(key, default):
        return parse_real(params.get(key, default))

    omega, width, alpha, tbar = real('omega', 1), real('T', 1), real('alpha', 1), real('tbar', 0)
    same = params.get('same', 'false').lower() in ('1', 'true', 'yes')
    d = DetectorParams.single(3, omega, width, alpha, temporal_centre=tbar)
    if same:
        d2 = d
    else:
        d2 = DetectorParams.single(3, real('omega2', omega), real('T2', width), real('alpha2', alpha),
                                   centre=(real('L', 0), 0.0, 0.0), temporal_centre=real('tbar2', tbar))
    signs = SignPair(int(params.get('p', 1)), int(params.get('q', 1)))

    closed = evaluate_propagator(kind, d, d2, signs, same)
    info = {"种类": kind.value, "符号对": signs.label, "闭式": f"{closed.value:.15g}", "方法": closed.method.value}
    if params.get('oracle', 'true').lower() in ('1', 'true', 'yes'):
        reference = evaluate_oracle(kind, d, d2, signs)
        deviation = abs(closed.value - reference.value) / max(abs(reference.value), 1e-300)
        info.update({"数值参照": f"{reference.value:.15g}", "相对偏差": f"{deviation:.3e}"})
    print_status_info(info, "涂抹传播子")
    return EXIT_OK


def create_parser():
    parser = create_base_parser("语境性收获计算工具")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sweep = subparsers.add_parser("sweep", help="执行参数扫描")
    sweep.add_argument("--config", "-c", default=None, help="YAML/JSON 扫描配置文件")
    sweep.add_argument("--preset", default=None, help="预设: figure1 / figure2 / figure2_sqrt2")
    sweep.add_argument("--setup", choices=["single_qutrit", "qubit_qutrit"], default=None)
    sweep.add_argument("--angle-set", type=int, choices=[1, 2, 3], default=None)
    sweep.add_argument("--omega", default=None, help="Ω 网格 MIN:MAX:COUNT")
    sweep.add_argument("--T", default=None, help="时间宽度列表，如 1/30,1/10,1/3,1")
    sweep.add_argument("--alpha-invsqrt", default=None, help="α^(-1/2) 列表")
    sweep.add_argument("--L", default=None, help="间距列表（qubit-qutrit）")
    sweep.add_argument("--lambda", dest="coupling", default=None, help="耦合常数 λ")
    sweep.add_argument("--threshold", default=None, help="|Δ/H| 阈值")
    sweep.add_argument("--out", default=None, help="输出 CSV 路径")
    sweep.add_argument("--workers", type=int, default=None, help="并行线程数")
    sweep.add_argument("--no-progress", action="store_true", help="不显示进度条")
    sweep.set_defaults(handler=command_sweep)

    scenario = subparsers.add_parser("scenario", help="场景工具")
    scenario_sub = scenario.add_subparsers(dest="action", required=True)
    check = scenario_sub.add_parser("check", help="检查角度组")
    check.add_argument("set_id", type=int)
    check.set_defaults(handler=command_scenario)

    cf = subparsers.add_parser("cf", help="经验模型的语境分数")
    cf.add_argument("model_file")
    cf.set_defaults(handler=command_cf)

    prop = subparsers.add_parser("prop", help="单个传播子取值")
    prop.add_argument("kind", help="wightman / wightman_fwd / wightman_bwd / hadamard / causal / "
                                   "retarded / advanced / symmetric / feynman")
    prop.add_argument("--params", default="", help="k=v,...: omega,T,alpha,tbar,omega2,T2,alpha2,tbar2,L,p,q,same,oracle")
    prop.set_defaults(handler=command_prop)
    return parser


def main(argv=None) -> int:
    """主函数"""
    parser = create_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_file)

    try:
        return args.handler(args)
    except NumericalError as e:
        print(f"❌ 数值计算失败: {e}")
        return EXIT_NUMERICAL
    except (ValueError, KeyError, OSError) as e:
        print(f"❌ 配置错误: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
