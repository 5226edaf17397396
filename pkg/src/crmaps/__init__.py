"""Group-invariant sphere-map polynomials in three variables, with exact rank verification."""
