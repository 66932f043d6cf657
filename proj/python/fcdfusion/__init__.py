"""Fast colour-preserving visible/infrared image fusion.

Images are numpy uint8 arrays: visible (H, W, 3) RGB, infrared (H, W).
"""

from ._fcdfusion import (
    audit_flops,
    color_deviation,
    evaluate,
    fuse,
    fuse_pixel,
    per_pixel_flops,
    rgb_to_hsv,
    rgb_to_yiq,
    total_flops,
)

METHODS = ("fcd", "rgb", "yiq", "hsv")

__all__ = [
    "METHODS",
    "audit_flops",
    "color_deviation",
    "evaluate",
    "fuse",
    "fuse_pixel",
    "per_pixel_flops",
    "rgb_to_hsv",
    "rgb_to_yiq",
    "total_flops",
]
