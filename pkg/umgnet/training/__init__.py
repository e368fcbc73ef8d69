# flake8: noqa
"""UMGNet: projection, graph encoding, residual outcome heads, training
and MC dropout inference
"""
from .checkpoint import (load_checkpoint,
                         save_checkpoint)
from .gnn import encode
from .loss import (loss_t,
                   loss_y)
from .model import (ForwardOutput,
                    Head,
                    ModelInputs,
                    UpliftModel,
                    apply_head,
                    head_forward,
                    project_features,
                    user_representation)
from .predict import (UpliftPrediction,
                      mc_dropout_predict,
                      predict_uplift)
from .train import (train,
                    training_loss)
