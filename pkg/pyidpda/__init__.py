from .__about__ import __version__
from .alphabet import Alphabet, InputString, SymbolClass, is_well_nested, well_nested_strings
from .automaton import Didpda, Nidpda, ValidationReport, validate
from .check import CheckResult, CheckStatus
from .determinize import DeterminizationResult, determinize, metrics, summarize
from .document import parse_automaton, parse_didpda, render_report, serialize_automaton, tokenize
from .equivalence import ProductAutomaton, bounded_equivalence, product_inequivalence
from .exceptions import *
from .gadget import GadgetString, gadget_f, gadget_g, gadget_h, gadget_u, gadget_v, gadget_w, gadget_y
from .relation import BehaviorRelation
from .simulation import RelationCalculus, behavior_relation, didpda_accepts, didpda_run, nidpda_accepts, relation_accepts
from .verify import SuiteProfile, SuiteReport, SuiteRunner, run_suite
from .witness import WitnessFamily, build_A, build_B, build_B12, build_Bns, build_witness
