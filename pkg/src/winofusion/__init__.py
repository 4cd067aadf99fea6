"""Collaborative Winograd-schema workbench.

A rule-based generator drafts schema candidates from a sentence corpus,
crowd workers qualify or modify them under quality controls, and the
qualification outcomes feed back into the generator's ranking parameters.
"""

__version__ = "0.1.0"
