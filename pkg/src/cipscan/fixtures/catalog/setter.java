class ProjectHelper {
    void configure(Project project, Helper helperImpl) {
        project.setBasedir(helperImpl.buildFileParent.getAbsolutePath());
    }
}
