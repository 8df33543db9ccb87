from setuptools import setup, find_namespace_packages

setup(
    name="finitegroups-sdegree",
    version="0.1.dev0",
    packages=find_namespace_packages(where="src"),
    package_dir={"": "src"},
    package_data={"finitegroups_contrib.sdegree": ["*.rst"]},
    author="finitegroups-sdegree contributors",
    python_requires=">=3.10",
    install_requires=[
        "idaes-pse >= 2.2",
        "pyomo >= 6.6",
        "numpy >= 1.22",
        "pytest >= 7",
    ],
    entry_points={
        "console_scripts": [
            "sdegree = finitegroups_contrib.sdegree.cli:main",
        ],
    },
)
