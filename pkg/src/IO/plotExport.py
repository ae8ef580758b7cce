"""
Plot export - robustness curves rendered to PNG.

External Libraries Used:
- matplotlib - Figure drawing on the non-interactive Agg canvas
"""
import logging
from pathlib import Path
from typing import Dict, Sequence, Tuple

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

logger = logging.getLogger(__name__)

_COLORS = ['#0066cc', '#cc3300', '#339933', '#9933cc', '#cc9900', '#666666']


def plot_robustness_curves(curves: Dict[str, Sequence[Tuple[float, float]]], path,
                           title: str = "Robustness") -> Path:
    """One line per scenario; x fraction removed, y giant-component fraction."""
    path = Path(path)
    figure = Figure(figsize=(8, 5), dpi=100)
    figure.patch.set_facecolor('white')
    ax = figure.add_subplot(111)
    ax.grid(True, alpha=0.3, color='#cccccc')
    for i, (name, curve) in enumerate(sorted(curves.items())):
        xs = [p[0] for p in curve]
        ys = [p[1] for p in curve]
        ax.plot(xs, ys, color=_COLORS[i % len(_COLORS)], linewidth=2, label=name)
    ax.set_xlabel('Fraction removed', fontsize=10)
    ax.set_ylabel('Giant component fraction', fontsize=10)
    ax.set_xlim([0.0, 1.0])
    ax.set_ylim([0.0, 1.05])
    ax.set_title(title)
    ax.legend(loc='upper right', facecolor='white', edgecolor='#cccccc')
    FigureCanvasAgg(figure)
    path.parent.mkdir(parents=True, exist_ok=True)
    # no Software/date metadata so reruns are byte-identical
    figure.savefig(path, format="png", metadata={"Software": None})
    logger.info(f"[SAVE] {path.name}")
    return path
