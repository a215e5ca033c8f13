"""Built-in games with closed-form gradients and declared constants."""

from games.builtin.convolution import AntiConvolutionCost, ConvolutionCost
from games.builtin.linear_quadratic import LQCost, QuadCost, WeakDMCost
from games.builtin.rank_one import RankOneCost, SincosCost, sincos2p, sincos_root

__all__ = [
    "AntiConvolutionCost",
    "ConvolutionCost",
    "LQCost",
    "QuadCost",
    "RankOneCost",
    "SincosCost",
    "WeakDMCost",
    "sincos2p",
    "sincos_root",
]
