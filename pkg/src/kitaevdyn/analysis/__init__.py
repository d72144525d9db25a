"""Numerical diagnostics: fidelity, spectra, toric-code limit, closed-form budgets."""
