"""Tree learners, feature selection and hyperparameter search."""

from .bayesopt import BayesOptResult, Continuous, Integer, SearchSpace, Trial, bayes_opt, random_search
from .boruta import BorutaConfig, BorutaResult, boruta_select
from .data import FeatureMatrix, align_columns
from .ensemble import EnsembleModel, predict_proba
from .io import SCHEMA_VERSION, dumps_model, load_model, model_from_dict, model_to_dict, save_model
from .trees import BoostedModel, ForestModel, Tree, log_loss, train_boosted, train_forest

__all__ = [
    "BayesOptResult", "BoostedModel", "BorutaConfig", "BorutaResult", "Continuous",
    "EnsembleModel", "FeatureMatrix", "ForestModel", "Integer", "SCHEMA_VERSION",
    "SearchSpace", "Tree", "Trial", "align_columns", "bayes_opt", "boruta_select",
    "dumps_model", "load_model", "log_loss", "model_from_dict", "model_to_dict",
    "predict_proba", "random_search", "save_model", "train_boosted", "train_forest",
]
