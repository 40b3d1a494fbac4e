"""List colorings with short lists on scattered vertex sets: certificates, solvers, avoidance and exact oracles."""
