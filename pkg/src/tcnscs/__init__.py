"""Tree-child networks from lineage taxon strings and shortest common supersequences."""

from .codec import (InstanceFile, parse_extended_newick, parse_newick, suppress_degree2,
                    write_extended_newick, write_newick)
from .construct import (construct_network, display_tree, displayed_line_trees, is_displayed,
                        line_tree_from_permutation, one_component_network,
                        permutation_from_line_tree)
from .errors import (CapacityError, NewickError, NotInImageError, ProfileError,
                     StructureError, TaxonError, TcnError, WitnessError)
from .lts import (Ordering, check_c1_c2, label_internal_nodes, lineage_taxon_strings,
                  reconstruct_permutation)
from .model import (BinaryTree, PhyloNetwork, TaxonSet, canonical_form, hybridization_number,
                    is_below, is_line_tree, is_tree_child, networks_isomorphic)
from .reduction import (TwoScsInstance, decode_witness, encode_2scs, end_to_end_tcn_instance,
                        forward_witness, verify_equivalence)
from .scs import exact_scs, exhaustive_scs_oracle, is_supersequence, majority_merge, scs_length
from .solver import (anchor_chain, assemble_supersequence, lts_profile, network_for_ordering,
                     solve_line_trees_fast, solve_min_tcn)

__version__ = "0.1.0"
