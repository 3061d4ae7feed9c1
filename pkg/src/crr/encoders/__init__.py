"""Encoders of CRR instances: direct formula, CNF/DIMACS, SMT-LIB and LP."""
from crr.encoders.cnf import (CnfFormula, decode_model, dimacs_text, encode_cnf, read_dimacs,
                              read_dimacs_model, tseitin_cnf, write_dimacs)
from crr.encoders.formula import DirectFormula, VarMap, encode_direct, evaluate
from crr.encoders.lp import IlpModel, build_ilp, ilp_var_count, lp_text, read_lp_solution, write_lp
from crr.encoders.smtlib import read_smt_output, smtlib_text, write_smtlib

__all__ = [
    "CnfFormula", "DirectFormula", "IlpModel", "VarMap",
    "build_ilp", "decode_model", "dimacs_text", "encode_cnf", "encode_direct", "evaluate",
    "ilp_var_count", "lp_text", "read_dimacs", "read_dimacs_model", "read_lp_solution",
    "read_smt_output", "smtlib_text", "tseitin_cnf", "write_dimacs", "write_lp", "write_smtlib",
]
