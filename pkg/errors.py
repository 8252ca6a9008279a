"""
Errors estructurats de socialpower.
Tots hereten de ValueError; els índexs que es mostren són 1-based.
"""


class SocialPowerError(ValueError):
    """Error base del domini."""


class ConfigError(SocialPowerError):
    """Fitxer de configuració il·legible o amb claus desconegudes."""


class NonSquare(SocialPowerError):
    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"La matriu no és quadrada (n>=2): forma {self.shape}")


class RowSumViolation(SocialPowerError):
    def __init__(self, row: int, total: float):
        self.row = row
        self.total = total
        super().__init__(f"La fila {row} suma {total!r}, no 1")


class NonzeroDiagonal(SocialPowerError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"Element diagonal C[{i},{i}] diferent de 0")


class NegativeEntry(SocialPowerError):
    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(f"Element negatiu o fora de [0,1] a C[{i},{j}]")


class DimensionMismatch(SocialPowerError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"Dimensió incompatible: s'esperava {expected}, s'ha rebut {got}")


class SimplexViolation(SocialPowerError):
    """El vector no pertany al símplex."""


class AssumptionViolation(SocialPowerError):
    def __init__(self, assumption: str, detail: str):
        self.assumption = assumption
        self.detail = detail
        super().__init__(f"Violació de l'{assumption}: {detail}")


class SingularSystem(SocialPowerError):
    """Sistema lineal singular (algun theta_i = 1)."""


class RowStochasticityViolation(SocialPowerError):
    def __init__(self, max_drift: float):
        self.max_drift = max_drift
        super().__init__(f"V no és estocàstica per files (desviació {max_drift:.3e})")


class NotStar(SocialPowerError):
    """El graf d'influència no és una estrella."""


class CenterNotFullyStubborn(SocialPowerError):
    def __init__(self, center: int):
        self.center = center
        super().__init__(f"El centre {center} no és totalment tossut")


class CenterFullyStubborn(SocialPowerError):
    def __init__(self, center: int):
        self.center = center
        super().__init__(f"El centre {center} és totalment tossut")


class PreconditionCliNonzero(SocialPowerError):
    def __init__(self, center: int, leaf: int):
        self.center = center
        self.leaf = leaf
        super().__init__(f"C[{center},{leaf}] != 0 per a una fulla parcialment tossuda")


class StaleEquilibrium(SocialPowerError):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"x* té residu {residual:.3e} >= 1e-10")


class InsufficientTail(SocialPowerError):
    def __init__(self, points: int):
        self.points = points
        super().__init__(f"Cua insuficient per ajustar la taxa ({points} punts)")


class OutOfRange(SocialPowerError):
    """Paràmetre fora de l'interval permès."""


class BoundaryPoint(SocialPowerError):
    """x és a la frontera del símplex; el jacobià només es defineix a l'interior."""
