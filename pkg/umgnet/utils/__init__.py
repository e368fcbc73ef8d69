# flake8: noqa
from .print_time import print_time
from .seeds import (named_rng,
                    named_seed)
