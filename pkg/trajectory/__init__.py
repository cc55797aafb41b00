# trajectory/__init__.py
default_app_config = 'trajectory.apps.TrajectoryConfig'
