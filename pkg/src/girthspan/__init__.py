"""Label Cover / Min-Rep instances with girth control, and the basic
k-spanner gadget reduction, at desk scale."""

__version__ = "0.1.0"
