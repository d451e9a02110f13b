from cli.commands import bench, features, selftest, spectrum, wl

__all__ = ["bench", "features", "selftest", "spectrum", "wl"]
