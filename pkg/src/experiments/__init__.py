from experiments.settings import ConfigError, ExperimentConfig, parse_config
from experiments.pipelines import recompute_metrics, run_fig1, run_fig2, run_fig3, run_fig4, run_single

__all__ = ["ConfigError", "ExperimentConfig", "parse_config", "recompute_metrics", "run_fig1", "run_fig2",
           "run_fig3", "run_fig4", "run_single"]
