"""UMGNet: uplift modeling with graph neural networks on bipartite
user-product graphs, with an optional active-learning acquisition loop.

Submodules
----------

config:
    attrs configuration classes and config file handling
tensor:
    minimal dense/sparse tensor engine with reverse-mode differentiation
data:
    bipartite graphs, datasets, ingestion, synthesis and fold plans
training:
    the uplift model, its losses, training loop and MC-dropout inference
acquisition:
    k-means clustering, acquisition scores, batch selection, active loop
evaluation:
    uplift metrics, linear baselines and the inverted k-fold experiment
"""
__version__ = "0.1.0"
