from setuptools import setup, find_packages


setup(
    name="lefschetztools",
    use_scm_version={"write_to": "Lib/lefschetztools/_version.py"},
    python_requires=">=3.8",
    package_dir={"": "Lib"},
    packages=find_packages("Lib"),
    install_requires=[
        "numpy",
        "sympy",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    setup_requires=["setuptools_scm"],
    entry_points={
        "console_scripts": [
            "lefschetz=lefschetztools.cli:main",
            "ringlint=lefschetztools.lint:main",
        ],
    },
)
