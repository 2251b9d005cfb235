import os
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
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        package_dir = ext_path.parent  # …/katolab/ — ext name already carries the package
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        source_dir = Path(__file__).parent.resolve()
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DKATOLAB_BUILD_TESTING=OFF",
            f"-DKATOLAB_PYTHON_OUTPUT_DIR={package_dir}",
        ]
        env_jobs = os.environ.get("CMAKE_BUILD_PARALLEL_LEVEL", "2")
        subprocess.run(
            ["cmake", "-S", str(source_dir), "-B", str(build_dir), *cmake_args],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j", env_jobs],
            check=True,
        )


setup(
    packages=["katolab"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("katolab._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
