"""Light-cone quadrature, helicity-projection test-function maps, and the
ladder-operator vacuum for the quantized electromagnetic field and its
commuting random-field presentation."""

from ._core import (
    AnalyticTestFunction,
    Grid,
    TestFunction,
    Vacuum,
    __version__,
    add,
    boost_z,
    box_map,
    build_grid,
    bullet_map,
    default_config_json,
    draw_samples,
    gaussian_packet,
    inner_product,
    is_real_function,
    lorentz_transform,
    run_verification,
    sample_on_grid,
    scale,
    star_conjugate,
)

__all__ = [
    "AnalyticTestFunction",
    "Grid",
    "TestFunction",
    "Vacuum",
    "__version__",
    "add",
    "boost_z",
    "box_map",
    "build_grid",
    "bullet_map",
    "default_config_json",
    "draw_samples",
    "gaussian_packet",
    "inner_product",
    "is_real_function",
    "lorentz_transform",
    "run_verification",
    "sample_on_grid",
    "scale",
    "star_conjugate",
]
