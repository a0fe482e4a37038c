"""Validation of command-line input."""

from typing import Any, Dict, Iterable, List

from config.settings import ToleranceConfig, config

_INT_FIELDS = ("svd_max_sweeps",)
_STR_FIELDS = ("svd_method",)


def validate_suite_ids(suite_ids: Iterable[str]) -> List[str]:
    """Split comma lists, drop blanks and duplicates, keep registry order.

    An empty selection means every registered suite.
    """
    requested: List[str] = []
    for item in suite_ids:
        requested.extend(part.strip() for part in item.split(",") if part.strip())

    unknown = sorted(set(requested) - set(config.suites))
    if unknown:
        raise ValueError(f"Unknown suite id(s): {', '.join(unknown)}")

    if not requested:
        return list(config.suites)
    return [name for name in config.suites if name in requested]


def parse_tol_overrides(pairs: Iterable[str]) -> Dict[str, Any]:
    """Parse `name=value` pairs into ToleranceConfig overrides."""
    fields = set(ToleranceConfig.__dataclass_fields__)
    overrides: Dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"Expected name=value, got {pair!r}")
        name, raw = (part.strip() for part in pair.split("=", 1))
        if name not in fields:
            raise ValueError(f"Unknown tolerance: {name}")
        try:
            if name in _INT_FIELDS:
                overrides[name] = int(raw)
            elif name in _STR_FIELDS:
                overrides[name] = raw
            else:
                overrides[name] = float(raw)
        except ValueError as e:
            raise ValueError(f"Bad value for {name}: {raw!r}") from e
    return overrides


def validate_dimension(value: int, minimum: int = 1) -> bool:
    return isinstance(value, int) and value >= minimum
