# GENERATED VERSION FILE
# TIME: Mon Oct 19 14:56:08 2026
__version__ = '0.1.0'
__gitsha__ = 'unknown'
version_info = (0, 1, 0)
