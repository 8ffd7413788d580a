"""badapt: Besov and Kondratiev regularity of parabolic problems on polygonal domains."""
