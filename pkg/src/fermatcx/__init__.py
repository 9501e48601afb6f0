"""Delta-complexes for Fermat curve complements."""
