"""
Setup configuration for the Khovanov tangle invariants toolkit.
"""
from setuptools import setup, find_packages

setup(
    name="khovanov-tangles",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "pydantic>=2.7.0",
        "pydantic-settings>=2.9.0",
        "python-dotenv>=1.0.1",
        "loguru>=0.7.0",
        "numpy>=1.24.0",
        "pandas>=2.2.0",
        "sympy>=1.12",
    ],
    extras_require={
        "dev": [
            "pytest>=7.4.3",
            "pytest-cov>=4.1.0",
            "pytest-mock>=3.12.0",
        ],
    },
    entry_points={
        "console_scripts": ["khovanov=app.cli.main:main"],
    },
    python_requires=">=3.9",
    description="Khovanov arc algebras, tangle bimodules, Burnside coherence and integral homology",
    long_description=open("README.md").read() if __import__("os").path.exists("README.md") else "",
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
)
