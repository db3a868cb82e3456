from src.numerics.integrate import rk4_step
from src.numerics.linalg import Mat, as_mat, characteristic_poly, mat_mul, rank
from src.numerics.polynomial import ComplexRoot, as_poly, poly_roots, residual

__all__ = [
    "ComplexRoot",
    "Mat",
    "as_mat",
    "as_poly",
    "characteristic_poly",
    "mat_mul",
    "poly_roots",
    "rank",
    "residual",
    "rk4_step",
]
