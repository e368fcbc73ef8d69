"""Main configuration used for an uplift experiment

Aggregates the sub configuration modules into one configuration tree.
Most sections are optional, depending on which command is run.  If a
section necessary for a particular command is missing, the default
section is used or an error is raised by the command.
"""
import attr

from umgnet.errors import ConfigurationError

from .acquisition import AcquisitionConfig
from .data import (DataConfig,
                   SyntheticConfig)
from .evaluate import EvaluateConfig
from .general import GeneralConfig
from .job import JobConfig
from .model import ModelConfig
from .utils import (apply_overrides,
                    ensure_cls,
                    load_config)


@attr.s(kw_only=True)
class UpliftConfig:
    """Defines the configuration of a run

    Attributes
    ----------
    path: str
        Path to the config file, set automatically by `from_file`
    general: GeneralConfig
        General configuration parameters (seed, logging, output)
    model: ModelConfig
        Architecture and training schedule of the uplift model
    data: DataConfig
        Tables the dataset is ingested from
    synthetic: SyntheticConfig
        Parameters of a simulated dataset, used if no tables are given
    acquisition: AcquisitionConfig
        Acquisition objective and active learning loop
    evaluate: EvaluateConfig
        Inverted k-fold evaluation sweep
    job: JobConfig
        Parallelism of the evaluation fan-out
    """
    path = attr.ib(type=str, default=None)
    general = attr.ib(converter=ensure_cls(GeneralConfig),
                      default=attr.Factory(GeneralConfig))
    model = attr.ib(converter=ensure_cls(ModelConfig),
                    default=attr.Factory(ModelConfig))
    data = attr.ib(converter=ensure_cls(DataConfig),
                   default=attr.Factory(DataConfig))
    synthetic = attr.ib(converter=ensure_cls(SyntheticConfig), default=None)
    acquisition = attr.ib(converter=ensure_cls(AcquisitionConfig),
                          default=attr.Factory(AcquisitionConfig))
    evaluate = attr.ib(converter=ensure_cls(EvaluateConfig),
                       default=attr.Factory(EvaluateConfig))
    job = attr.ib(converter=ensure_cls(JobConfig),
                  default=attr.Factory(JobConfig))

    @classmethod
    def from_dict(cls, config_dict, overrides=None):
        """Construct UpliftConfig from a (nested) dict

        Args
        ----
        config_dict: dict
            Nested configuration, e.g. as loaded from a toml file
        overrides: dict of str: value, optional
            Dotted keys ("model.gnn") that replace values of config_dict,
            e.g. from command line flags; None values are ignored
        """
        config_dict = dict(config_dict)
        if overrides:
            apply_overrides(config_dict, overrides)
        try:
            return cls(**config_dict)
        except TypeError as e:
            raise ConfigurationError(str(e))

    @classmethod
    def from_file(cls, path, overrides=None):
        """Construct UpliftConfig object from path to config file

        Called as UpliftConfig.from_file(path_to_config_file)
        """
        config_dict = load_config(path)
        config_dict["path"] = path
        return cls.from_dict(config_dict, overrides=overrides)

    def __attrs_post_init__(self):
        """Fill seeds that are not set with the top-level seed"""
        if self.model.seed is None:
            self.model.seed = self.general.seed
        if self.synthetic is not None and self.synthetic.seed is None:
            self.synthetic.seed = self.general.seed
