import os
import sys

# An editable install registers an import hook that wins over PYTHONPATH.
# When ctest points PYTHONPATH at the build tree, drop that hook so the
# freshly built module is the one under test.
if os.environ.get("ANTIBUNCH_EXPECT_BUILD_TREE"):
    sys.meta_path[:] = [f for f in sys.meta_path if "ScikitBuild" not in type(f).__name__]
    for name in [m for m in sys.modules if m == "antibunch" or m.startswith("antibunch.")]:
        del sys.modules[name]
