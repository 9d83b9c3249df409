"""Build the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print("mouldlab: skipping compiled kernels (%s)" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("mouldlab: could not build %s (%s)" % (ext.name, exc))


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [Extension("mouldlab._ckernels", ["src/mouldlab/_ckernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
