"""CMake-driven build of the mlgosc extension (cmake_example pattern)."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        ext_fullpath = Path.cwd() / self.get_ext_fullpath(ext.name)
        extdir = ext_fullpath.parent.resolve()
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}{os.sep}",
            f"-DPYTHON_EXECUTABLE={sys.executable}",
            "-DCMAKE_BUILD_TYPE=Release",
            "-DMLGOSC_BUILD_PYTHON=ON",
        ]
        subprocess.run(["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True)
        subprocess.run(["cmake", "--build", ".", "--target", "_mlgosc", "-j"],
                       cwd=build_temp, check=True)
        built = build_temp / "python" / "mlgosc"
        for so in built.glob("_mlgosc*"):
            dest = extdir / "mlgosc" / so.name
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_bytes(so.read_bytes())


setup(
    packages=["mlgosc"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("mlgosc._mlgosc")],
    cmdclass={"build_ext": CMakeBuild},
)
