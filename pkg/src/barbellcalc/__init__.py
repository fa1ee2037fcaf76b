"""Exact algebra behind barbell-diffeomorphism nontriviality certificates.

Modules: lattice and wspace (the truncated W(Y) quotient), confpair (coface
maps and the pairing), groupword and groupring (free products of cyclic
groups and their group rings), embpi1 (the semidirect product model),
certify (scenario pipelines) and cli.
"""

__version__ = "0.1.0"
