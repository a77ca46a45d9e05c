# Exact moment bounds for random bilinear forms
# Library modules: distributions, moments, bounds, rosenthal, verification, cli
