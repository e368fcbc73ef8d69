from setuptools import setup

setup(
        name='umgnet',
        version='0.1.0',
        description='Uplift modeling with graph neural networks on '
                    'bipartite user-product graphs.',
        license='MIT',
        packages=[
            'umgnet',
            'umgnet.acquisition',
            'umgnet.config',
            'umgnet.data',
            'umgnet.evaluation',
            'umgnet.tensor',
            'umgnet.training',
            'umgnet.utils',
        ],
        install_requires=[
            'attrs',
            'networkx',
            'numpy',
            'pandas',
            'scikit-learn',
            'scipy',
            'toml',
            'tqdm',
        ],
        entry_points={
            'console_scripts': ['umgnet=umgnet.cli:main'],
        },
        python_requires=">=3.8"
)
