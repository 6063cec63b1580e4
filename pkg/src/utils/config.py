"""
配置管理模块
"""
import os
from dataclasses import dataclass
from pathlib import Path
from dotenv import load_dotenv

# 获取项目根目录并加载环境变量
project_root = Path(__file__).parent.parent.parent
env_path = project_root / 'config' / '.env'
load_dotenv(env_path)


@dataclass
class QuadratureConfig:
    """半无限积分配置"""
    abs_tol: float = float(os.getenv('QUAD_ABS_TOL', '1e-10'))
    rel_tol: float = float(os.getenv('QUAD_REL_TOL', '1e-8'))
    max_subdivisions: int = int(os.getenv('QUAD_MAX_SUBDIVISIONS', '200'))
    cutoff_sigma: float = float(os.getenv('QUAD_CUTOFF_SIGMA', '12'))
    max_escalations: int = int(os.getenv('QUAD_MAX_ESCALATIONS', '2'))


@dataclass
class HarvestConfig:
    """探测器与收获判据配置"""
    default_coupling: float = float(os.getenv('DEFAULT_COUPLING', '1e-4'))
    strong_support_eta: float = float(os.getenv('STRONG_SUPPORT_ETA', '7'))
    harvest_threshold: float = float(os.getenv('HARVEST_THRESHOLD', '0.1'))
    small_l_factor: float = float(os.getenv('SMALL_L_FACTOR', '1e-3'))


@dataclass
class SystemConfig:
    """系统配置"""
    log_level: str = os.getenv('LOG_LEVEL', 'INFO')
    output_dir: str = os.getenv('OUTPUT_DIR', './results')
    sweep_workers: int = int(os.getenv('SWEEP_WORKERS', '4'))
    config_dir: str = str(project_root / 'config')


# 全局配置实例
quad_config = QuadratureConfig()
harvest_config = HarvestConfig()
system_config = SystemConfig()
