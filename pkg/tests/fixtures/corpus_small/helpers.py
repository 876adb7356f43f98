"""Shared helpers."""


def load_config():
    return {"debug": False}


def fmt(cfg):
    return str(cfg)
