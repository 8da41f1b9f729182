__version__: str = "0.1.0"
TOOL_NAME: str = "minpart-lab"
