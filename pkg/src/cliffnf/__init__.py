"""Normal forms, exact equivalence and rewriting for Clifford circuits."""
