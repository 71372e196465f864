"""Topic discovery and query generation for RDF ontologies."""

__version__ = "0.1.0"
