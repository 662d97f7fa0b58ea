import os
import pathlib
import sys

# Prefer an installed lwrnet; otherwise pick up the extension straight from
# the cmake build tree (LWR_MODULE_DIR, or ./build) and graft it onto the
# source package.
try:
    import lwrnet  # noqa: F401
except ImportError:
    root = pathlib.Path(__file__).resolve().parents[2]
    module_dir = os.environ.get("LWR_MODULE_DIR", str(root / "build"))
    sys.path.insert(0, module_dir)
    import _lwr

    sys.modules["lwrnet._lwr"] = _lwr
    sys.path.insert(0, str(root / "python"))
