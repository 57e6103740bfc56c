from .channel_interface import BUSY, IDLE, ChannelModel, step_channels
from .markov import MarkovChannelSet, init_markov
from .periodic import PeriodicPattern
from .correlated import CorrelatedPattern, init_correlated
from .trace import TraceChannelModel, TraceTable, load_trace, write_trace
from .switching import SwitchingChannelModel, make_switching_env
from .slot import observe, resolve_slot, total_reward
from .environment import SpectrumEnvironment
from .channel_factory import ChannelFactory

__all__ = [
    "BUSY", "IDLE", "ChannelModel", "step_channels",
    "MarkovChannelSet", "init_markov", "PeriodicPattern", "CorrelatedPattern", "init_correlated",
    "TraceChannelModel", "TraceTable", "load_trace", "write_trace",
    "SwitchingChannelModel", "make_switching_env",
    "observe", "resolve_slot", "total_reward",
    "SpectrumEnvironment", "ChannelFactory",
]
