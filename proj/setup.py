"""Builds the pybind11 extension through the project's CMake tree.

The canonical build system is CMake; this driver exists so that
`pip install . --no-build-isolation` (or `-e .`) produces the Python package
without a separate manual build step.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        import pybind11

        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DCLIQUEFILTER_BUILD_PYTHON=ON",
                "-DCLIQUEFILTER_BUILD_TESTS=OFF",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "cliquefilter_pymodule"],
            check=True,
        )

        built = sorted((build_dir / "python" / "cliquefilter").glob("_core.*"))
        if not built:
            raise RuntimeError("CMake build produced no _core extension module")
        destination = Path(self.get_ext_fullpath(ext.name)).resolve()
        destination.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], destination)


setup(
    packages=["cliquefilter"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("cliquefilter._core")],
    cmdclass={"build_ext": CMakeBuild},
)
