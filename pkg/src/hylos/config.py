"""Flat text configuration files.

One `key = value` pair per line, dotted lowercase keys, `#` comments.
Values are parsed as int, float, bool, comma-separated tuples of those,
or plain strings.  Resolution against a defaults table is strict: a key
the table does not know is an error, never silently ignored, so a typo
cannot disable a threshold.
"""

import hashlib


def parse_scalar(text):
    """Parse one value: tuple on commas, else bool/int/float/str."""
    t = text.strip()
    if "," in t:
        parts = [p for p in t.split(",") if p.strip()]
        return tuple(parse_scalar(p) for p in parts)
    low = t.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    try:
        return int(t)
    except ValueError:
        pass
    try:
        return float(t)
    except ValueError:
        pass
    return t


def load_config(path):
    """Read a flat key = value file into a dict."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            key = key.strip()
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            if key in out:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            out[key] = parse_scalar(val)
    return out


def resolve(defaults, overrides):
    """Overlay overrides on defaults, rejecting unknown keys."""
    overrides = overrides or {}
    unknown = sorted(set(overrides) - set(defaults))
    if unknown:
        raise ValueError("unknown configuration keys: " + ", ".join(unknown))
    cfg = dict(defaults)
    cfg.update(overrides)
    return cfg


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ", ".join(format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(cfg):
    """Canonical text form: sorted keys, repr floats. Feeds the hash."""
    return "".join(f"{k} = {format_value(cfg[k])}\n" for k in sorted(cfg))


def config_hash(cfg):
    """sha256 of the canonical text form, for manifests."""
    return hashlib.sha256(format_config(cfg).encode("utf-8")).hexdigest()
