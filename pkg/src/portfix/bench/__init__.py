"""Fault injection, baselines and evaluation over synthetic porting cases."""
from .baselines import cs_baseline, cs_plus_baseline
from .dataset import SUITE_PATH, golden_case, load_case, load_suite, save_case
from .evaluate import STRATEGIES, EvalReport, evaluate
from .faults import FaultSpec, InjectedFault, PortingCase, inject
