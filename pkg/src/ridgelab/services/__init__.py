"""Domain packages, one per module: classes, geometry, algorithms, adversary, harness."""
