"""Root supersystems, Chevalley constants and matrix models of Lie superalgebras."""
