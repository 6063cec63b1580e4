#!/usr/bin/env python3
"""
探测器与传播子数据类型
自然单位 c = ħ = 1；空间涂抹为各向同性高斯项之和
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

from ..common.errors import InvalidDetectorError, MissingScalarError, NumericalOverflowError

Vector3 = Tuple[float, float, float]


@dataclass(frozen=True)
class GaussTerm:
    """空间涂抹的单个高斯项 c·e^{-α|x - x̄|²}"""
    coeff: float
    alpha: float
    centre: Vector3 = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise InvalidDetectorError(f"高斯项 α 必须为正: {self.alpha}")
        if len(self.centre) != 3:
            raise InvalidDetectorError(f"高斯项中心必须是三维向量: {self.centre}")
        object.__setattr__(self, 'centre', tuple(float(x) for x in self.centre))

    @property
    def reduced_coeff(self) -> float:
        """c̃ = c·α^{-3/2}"""
        return self.coeff * self.alpha ** -1.5


@dataclass(frozen=True)
class DetectorParams:
    """单个 Unruh-DeWitt 探测器"""
    dim: int
    omega: float
    temporal_width: float
    gauss_terms: Tuple[GaussTerm, ...]
    temporal_centre: float = 0.0
    coupling: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, 'gauss_terms', tuple(self.gauss_terms))
        if self.dim not in (2, 3):
            raise InvalidDetectorError(f"探测器维度只能为 2 或 3: {self.dim}")
        if not (self.omega >= 0 and math.isfinite(self.omega)):
            raise InvalidDetectorError(f"能隙 Ω 必须 ≥ 0: {self.omega}")
        if not (self.temporal_width > 0 and math.isfinite(self.temporal_width)):
            raise InvalidDetectorError(f"时间宽度 T 必须为正: {self.temporal_width}")
        if not math.isfinite(self.temporal_centre):
            raise InvalidDetectorError(f"时间中心必须有限: {self.temporal_centre}")
        if not (self.coupling >= 0 and math.isfinite(self.coupling)):
            raise InvalidDetectorError(f"耦合常数 λ 不能为负: {self.coupling}")
        if not self.gauss_terms:
            raise InvalidDetectorError("至少需要一个高斯项")
        if not self.norm > 0:
            raise InvalidDetectorError(f"涂抹归一化 ‖c̃‖ 必须为正: {self.norm}")

    @classmethod
    def single(cls, dim: int, omega: float, temporal_width: float, alpha: float,
               centre: Vector3 = (0.0, 0.0, 0.0), temporal_centre: float = 0.0,
               coupling: float = 1e-4) -> "DetectorParams":
        """单高斯项探测器"""
        return cls(
            dim=dim,
            omega=omega,
            temporal_width=temporal_width,
            gauss_terms=(GaussTerm(1.0, alpha, centre),),
            temporal_centre=temporal_centre,
            coupling=coupling,
        )

    @property
    def norm(self) -> float:
        """‖c̃‖ = Σ c_m α_m^{-3/2}"""
        return sum(term.reduced_coeff for term in self.gauss_terms)

    @property
    def is_single_term(self) -> bool:
        return len(self.gauss_terms) == 1

    def with_changes(self, **changes) -> "DetectorParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class PairGeometry:
    """高斯项对 (l, m) 的几何量"""
    beta: float
    separation: float
    delta_tbar: float

    def __post_init__(self):
        if not self.beta > 0:
            raise InvalidDetectorError(f"β 必须为正: {self.beta}")
        if self.separation < 0:
            raise InvalidDetectorError(f"间距 L 不能为负: {self.separation}")

    @classmethod
    def from_terms(cls, d: DetectorParams, term_l: GaussTerm,
                   d2: DetectorParams, term_m: GaussTerm) -> "PairGeometry":
        separation = math.dist(term_l.centre, term_m.centre)
        return cls(
            beta=1.0 / term_l.alpha + 1.0 / term_m.alpha,
            separation=separation,
            delta_tbar=d.temporal_centre - d2.temporal_centre,
        )


@dataclass(frozen=True)
class SignPair:
    """涂抹函数相位符号 Λ^{±} = Λ·e^{±iΩt}"""
    p: int
    q: int

    def __post_init__(self):
        if self.p not in (1, -1) or self.q not in (1, -1):
            raise InvalidDetectorError(f"符号只能为 ±1: ({self.p}, {self.q})")

    def swapped(self) -> "SignPair":
        return SignPair(self.q, self.p)

    def conjugated(self) -> "SignPair":
        """复共轭对应的符号 (−q, −p)"""
        return SignPair(-self.q, -self.p)

    @property
    def label(self) -> str:
        return f"{'+' if self.p > 0 else '-'}{'+' if self.q > 0 else '-'}"

    @classmethod
    def parse(cls, text: str) -> "SignPair":
        """解析 "+-"、"-+" 等写法"""
        text = text.strip()
        if len(text) != 2 or any(ch not in '+-' for ch in text):
            raise InvalidDetectorError(f"无法解析符号对: {text!r}")
        return cls(1 if text[0] == '+' else -1, 1 if text[1] == '+' else -1)


PLUS_PLUS = SignPair(1, 1)
MINUS_PLUS = SignPair(-1, 1)


class PropagatorKind(Enum):
    """涂抹双分布的种类"""
    WIGHTMAN = "Wightman"
    WIGHTMAN_FWD = "WightmanFwd"
    WIGHTMAN_BWD = "WightmanBwd"
    HADAMARD = "Hadamard"
    CAUSAL = "Causal"
    RETARDED = "Retarded"
    ADVANCED = "Advanced"
    SYMMETRIC = "Symmetric"
    FEYNMAN = "Feynman"


class OrderDirection(Enum):
    """时序方向"""
    FWD = "Fwd"
    BWD = "Bwd"


class EvaluationMethod(Enum):
    """求值方式"""
    CLOSED_FORM = "ClosedForm"
    QUADRATURE = "Quadrature"


@dataclass(frozen=True)
class PropagatorValue:
    """单个传播子取值"""
    value: complex
    kind: PropagatorKind
    method: EvaluationMethod = EvaluationMethod.CLOSED_FORM

    def __post_init__(self):
        value = complex(self.value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise NumericalOverflowError(f"{self.kind.value} 取值非有限: {value}")
        object.__setattr__(self, 'value', value)

    def __abs__(self) -> float:
        return abs(self.value)


PropagatorKey = Tuple[str, str, PropagatorKind]


@dataclass
class PropagatorSet:
    """按 (探测器对标签, 符号对, 种类) 索引的传播子集合"""
    values: Dict[PropagatorKey, PropagatorValue] = field(default_factory=dict)

    @staticmethod
    def key(pair: str, signs: SignPair, kind: PropagatorKind) -> PropagatorKey:
        return pair, signs.label, kind

    def put(self, pair: str, signs: SignPair, value: PropagatorValue):
        self.values[self.key(pair, signs, value.kind)] = value

    def get(self, pair: str, signs: SignPair, kind: PropagatorKind) -> complex:
        """
        取出数值

        Raises:
            MissingScalarError: 不存在对应条目
        """
        try:
            return self.values[self.key(pair, signs, kind)].value
        except KeyError:
            raise MissingScalarError(f"缺少传播子 {kind.value}[{pair}, {signs.label}]") from None

    def __contains__(self, item: PropagatorKey) -> bool:
        return item in self.values

    def __iter__(self) -> Iterator[Tuple[PropagatorKey, PropagatorValue]]:
        return iter(self.values.items())

    def __len__(self) -> int:
        return len(self.values)
