"""Minimal DIMACS front end over pysat, printing SAT-competition output."""
import sys

from pysat.formula import CNF
from pysat.solvers import Minisat22

cnf = CNF(from_file=sys.argv[1])
with Minisat22(bootstrap_with=cnf.clauses) as s:
    if s.solve():
        print("s SATISFIABLE")
        print("v " + " ".join(map(str, s.get_model())) + " 0")
        sys.exit(10)
    print("s UNSATISFIABLE")
    sys.exit(20)
