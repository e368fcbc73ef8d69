"""Contains some utility functions to load and handle configuration
"""
import hashlib
import json
import logging
import os

import attr
import toml

from umgnet.errors import ConfigurationError

logger = logging.getLogger(__name__)


def load_config(config_file):
    """Load toml or json config file into dict

    Args
    ----
    config_file: str
        path to config file, in json or toml format

    Raises
    ------
    ConfigurationError
        If file does not exist or is not in json or toml format
    """
    if not os.path.isfile(config_file):
        raise ConfigurationError(
            "config file %s does not exist" % config_file)
    ext = os.path.splitext(config_file)[1]
    with open(config_file, 'r', encoding='utf-8') as f:
        try:
            if ext == '.json':
                config = json.load(f)
            elif ext in ('.toml', ''):
                config = toml.load(f)
            else:
                raise ConfigurationError(
                    "Only json and toml config files supported, not %s" % ext)
        except (ValueError, toml.TomlDecodeError) as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(
                "unable to parse config file %s: %s" % (config_file, e))
    return config


def dump_config(config, path):
    """Write config (as class or dict) to toml file

    Args
    ----
    config: UpliftConfig or dict
    path: str
        Target file
    """
    if not isinstance(config, dict):
        config = attr.asdict(config)
    logger.debug("config dump path: %s", path)
    with open(path, 'w', encoding='utf-8') as f:
        toml.dump(config, f)
    return path


def config_hash(config):
    """Stable hash of the parts of a config that influence results

    Paths of the config file and the output directory are ignored, so the
    same experiment run into different directories hashes the same.
    """
    if not isinstance(config, dict):
        config = attr.asdict(config)
    config = {k: v for k, v in config.items() if k != "path"}
    general = dict(config.get("general") or {})
    general.pop("out_dir", None)
    config["general"] = general
    blob = json.dumps(config, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def apply_overrides(config_dict, overrides):
    """Set dotted keys ("section.key") in a nested config dict

    Values that are None are skipped, so unset command line flags do not
    shadow values from the file.
    """
    for dotted, value in overrides.items():
        if value is None:
            continue
        section = config_dict
        keys = dotted.split(".")
        for key in keys[:-1]:
            section = section.setdefault(key, {})
            if not isinstance(section, dict):
                raise ConfigurationError(
                    "cannot override %s, %s is not a section" % (dotted, key))
        section[keys[-1]] = value
    return config_dict


def ensure_cls(cl):
    """attrs converter to ensure type of value

    If the attribute is an instance of cls or None, pass, else try
    constructing. This way an instance of an attrs config object can be
    passed or a dict that can be used to construct such an instance.
    Unknown keys are reported as ConfigurationError.
    """
    def converter(val):
        if isinstance(val, str) and val.endswith(".toml"):
            val = load_config(val)
        if isinstance(val, cl) or val is None:
            return val
        if not isinstance(val, dict):
            raise ConfigurationError(
                "section %s must be a table, got %r" % (cl.__name__, val))
        try:
            return cl(**val)
        except TypeError as e:
            raise ConfigurationError("%s: %s" % (cl.__name__, e))
    return converter


def in_choices(choices):
    """attrs validator, value has to be one of choices"""
    def _check(self, attribute, value):
        if value not in choices:
            raise ConfigurationError(
                "{} must be one of {}, not {!r}".format(
                    attribute.name, sorted(choices), value))
    return _check


def positive(self, attribute, value):
    """attrs validator, value (or every list member) has to be > 0"""
    values = value if isinstance(value, (list, tuple)) else [value]
    if len(values) == 0 or any(v is None or v <= 0 for v in values):
        raise ConfigurationError(
            "{} must be positive, not {!r}".format(attribute.name, value))


def non_negative(self, attribute, value):
    """attrs validator, value has to be >= 0"""
    if value is None or value < 0:
        raise ConfigurationError(
            "{} must be non-negative, not {!r}".format(attribute.name, value))


def probability(self, attribute, value):
    """attrs validator, value has to be in [0, 1)"""
    if value is None or not 0.0 <= value < 1.0:
        raise ConfigurationError(
            "{} must be in [0, 1), not {!r}".format(attribute.name, value))


def fraction(self, attribute, value):
    """attrs validator, value has to be in (0, 1]"""
    if value is None or not 0.0 < value <= 1.0:
        raise ConfigurationError(
            "{} must be in (0, 1], not {!r}".format(attribute.name, value))


_int_list_validator = attr.validators.deep_iterable(
    member_validator=attr.validators.instance_of(int),
    iterable_validator=attr.validators.instance_of(list))

_float_list_validator = attr.validators.deep_iterable(
    member_validator=attr.validators.instance_of((int, float)),
    iterable_validator=attr.validators.instance_of(list))


def _check_length(length):
    """attrs validator to verify length of list"""
    def _check(self, attribute, value):
        if len(value) != length:
            raise ConfigurationError(
                "{} must have {} entries, got {}".format(
                    attribute.name, length, len(value)))
    return _check
