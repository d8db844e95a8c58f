from .alignment import align_vtree, vtree_isomorphism
from .products import conjoin, disjoin
from .terms import term_circuit, clause_circuit
