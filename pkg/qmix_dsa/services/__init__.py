from .checkpoint_store import decode_checkpoint, encode_checkpoint, load_checkpoint, save_checkpoint
from .metrics_logger import MetricsLogger, read_metrics
from .plot_exporter import export_plot

__all__ = [
    "decode_checkpoint", "encode_checkpoint", "load_checkpoint", "save_checkpoint",
    "MetricsLogger", "read_metrics", "export_plot",
]
