from matchingframes.strings.suffix_array import SuffixArray, build_suffix_array, naive_suffix_array
from matchingframes.strings.lcp import LcpStructure, SparseTableMin, lcp_query, naive_lcp
from matchingframes.strings.lex_sorted import Fingerprint, LexSortedArray, fingerprint
