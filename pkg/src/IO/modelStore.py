"""
OU model dump/load - one `key = value` pair per line.

Keys: mu_e, mu_n, gamma_e, gamma_n, sigma_e, sigma_n, anchor_lat, anchor_lon,
anchor_t, v0_e, v0_n. Lines starting with '#' are ignored.
"""
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional

from analyses.prediction.ou import OuModel
from core.errors import IngestError
from core.timeutil import format_utc
from geo import GeoPoint

logger = logging.getLogger(__name__)

MODEL_KEYS = ["mu_e", "mu_n", "gamma_e", "gamma_n", "sigma_e", "sigma_n",
              "anchor_lat", "anchor_lon", "anchor_t", "v0_e", "v0_n"]


def model_to_text(model: OuModel, header_lines: Optional[Iterable[str]] = None) -> str:
    values = {
        "mu_e": model.mu[0], "mu_n": model.mu[1],
        "gamma_e": model.gamma[0], "gamma_n": model.gamma[1],
        "sigma_e": model.sigma[0], "sigma_n": model.sigma[1],
        "anchor_lat": model.anchor.lat, "anchor_lon": model.anchor.lon,
        "anchor_t": model.anchor_t,
        "v0_e": model.v0[0], "v0_n": model.v0[1],
    }
    lines = [f"# {h}" for h in header_lines or []]
    lines.append(f"# anchored {format_utc(model.anchor_t)}")
    for key in MODEL_KEYS:
        value = values[key]
        lines.append(f"{key} = {value}" if key == "anchor_t" else f"{key} = {float(value)!r}")
    return "\n".join(lines) + "\n"


def dump_model(model: OuModel, path, header_lines: Optional[Iterable[str]] = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model_to_text(model, header_lines), encoding="utf-8")
    logger.info(f"[SAVE] OU model -> {path.name}")


def load_model(path) -> OuModel:
    """
    Raises:
        IngestError: unreadable file, missing, unknown or malformed keys
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise IngestError(f"cannot read model file {path}: {e}")
    values: Dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in MODEL_KEYS:
            raise IngestError(f"{path}:{number}: unexpected line {line!r}")
        values[key] = value.strip()
    missing = [k for k in MODEL_KEYS if k not in values]
    if missing:
        raise IngestError(f"{path}: missing keys {missing}")
    try:
        f = {k: float(v) for k, v in values.items() if k != "anchor_t"}
        model = OuModel(
            mu=(f["mu_e"], f["mu_n"]), gamma=(f["gamma_e"], f["gamma_n"]),
            sigma=(f["sigma_e"], f["sigma_n"]),
            anchor=GeoPoint(lat=f["anchor_lat"], lon=f["anchor_lon"]),
            anchor_t=int(values["anchor_t"]), v0=(f["v0_e"], f["v0_n"]))
    except ValueError as e:
        raise IngestError(f"{path}: {e}")
    logger.info(f"[LOAD] OU model <- {path.name}")
    return model
