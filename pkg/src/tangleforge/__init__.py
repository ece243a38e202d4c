"""Tree-of-tangles decompositions of finitely described infinite graphs."""
