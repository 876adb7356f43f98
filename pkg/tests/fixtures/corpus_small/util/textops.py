import helpers

BANNER = helpers.fmt({"mode": "demo"})
WIDTH = len(BANNER)
