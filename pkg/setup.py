from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; jonestails.kernels falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("jonestails._kernels", ["src/jonestails/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
